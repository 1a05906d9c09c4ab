#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lpplab/errors.hpp"

namespace lpplab {

// Streaming, mergeable means and centered co-moments (Welford / Chan).
// Observations are also routed round-robin into `batch_count` sub-accumulators
// keyed by global observation index, which back the batch-means standard
// errors.  Merging acc2 after acc1 rotates acc2's batches by acc1's count, so
// chunked accumulation followed by in-order merges reports the same batch
// assignment as a single stream.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(int dim, int batch_count = 50);

  int dim() const { return dim_; }
  int batch_count() const { return batch_count_; }
  std::int64_t count() const { return count_; }

  void push(std::span<const double> observation);
  // `other` must hold the observations that followed this accumulator's.
  void merge(const MomentAccumulator& other);

  double mean(int i) const;
  // Sample covariance, comoment(i,j)/(count-1).
  double covariance(int i, int j) const;

  // Pooled Pearson correlation (clamped to [-1,1]) and its batch-means
  // standard error.  Requires count >= 2 * batch_count.
  std::pair<double, double> correlation(int i, int j) const;

  // Two routes to the regression-residual variance of coordinate i on
  // coordinate j: lhs = min over lambda of Var(U - lambda V) in closed form,
  // rhs = (1 - corr^2(U,V)) Var(U).  They agree up to rounding.
  std::pair<double, double> residual_identity(int i, int j) const;

  // Per-batch moments, for batch-means errors of custom estimators.
  std::int64_t batch_observations(int b) const;
  double batch_mean(int b, int i) const;
  double batch_covariance(int b, int i, int j) const;

 private:
  struct Pooled {
    std::int64_t count = 0;
    std::vector<double> mean;
    std::vector<double> com;  // upper triangle, index via tri(i,j)

    void init(int dim);
    void push(std::span<const double> x, int dim);
    void merge(const Pooled& other, int dim);
    double comoment(int i, int j, int dim) const;
  };

  static double pearson(const Pooled& p, int i, int j, int dim);

  int dim_;
  int batch_count_;
  std::int64_t count_ = 0;
  Pooled pooled_;
  std::vector<Pooled> batches_;
};

// Weighted least squares of ln y on ln x.
struct FitPoint {
  double x = 0;
  double y = 0;
  double weight = 1.0;
};

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double slope_stderr = 0;
  double r_squared = 0;
  std::vector<FitPoint> points;  // stored as (ln x, ln y, weight)
};

// Requires >= 3 points with positive x, y and weights.
ExponentFit fit_loglog(std::span<const FitPoint> points);

struct KsResult {
  double statistic = 0;
  double critical_1pct = 0;
};

// Classical two-sample Kolmogorov-Smirnov statistic with the asymptotic 1%
// critical value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Order statistic with linear interpolation; q in [0,1].
double quantile(std::vector<double> values, double q);

}  // namespace lpplab
