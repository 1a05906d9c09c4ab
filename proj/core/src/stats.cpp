#include "lpplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpplab {

namespace {

// Upper-triangle index for i <= j in a dim x dim symmetric matrix.
inline std::size_t tri(int i, int j, int dim) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i) * dim - static_cast<std::size_t>(i) * (i - 1) / 2 +
         static_cast<std::size_t>(j - i);
}

}  // namespace

void MomentAccumulator::Pooled::init(int dim) {
  mean.assign(static_cast<std::size_t>(dim), 0.0);
  com.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0);
}

void MomentAccumulator::Pooled::push(std::span<const double> x, int dim) {
  ++count;
  const double inv = 1.0 / static_cast<double>(count);
  // delta uses the old mean, delta2 the updated one.
  std::vector<double> delta(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    delta[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)];
    mean[static_cast<std::size_t>(i)] += delta[static_cast<std::size_t>(i)] * inv;
  }
  for (int i = 0; i < dim; ++i) {
    const double d2i = x[static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)];
    for (int j = i; j < dim; ++j) {
      com[tri(i, j, dim)] += delta[static_cast<std::size_t>(j)] * d2i;
    }
  }
}

void MomentAccumulator::Pooled::merge(const Pooled& other, int dim) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  std::vector<double> d(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    d[static_cast<std::size_t>(i)] =
        other.mean[static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      com[tri(i, j, dim)] += other.com[tri(i, j, dim)] +
                             d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)] *
                                 (na * nb / n);
    }
  }
  for (int i = 0; i < dim; ++i) {
    mean[static_cast<std::size_t>(i)] += d[static_cast<std::size_t>(i)] * (nb / n);
  }
  count += other.count;
}

double MomentAccumulator::Pooled::comoment(int i, int j, int dim) const {
  return com[tri(i, j, dim)];
}

MomentAccumulator::MomentAccumulator(int dim, int batch_count)
    : dim_(dim), batch_count_(batch_count) {
  if (dim < 1) throw std::invalid_argument("MomentAccumulator: dim must be >= 1");
  if (batch_count < 2) {
    throw std::invalid_argument("MomentAccumulator: batch_count must be >= 2");
  }
  pooled_.init(dim);
  batches_.resize(static_cast<std::size_t>(batch_count));
  for (auto& b : batches_) b.init(dim);
}

void MomentAccumulator::push(std::span<const double> observation) {
  if (static_cast<int>(observation.size()) != dim_) {
    throw std::invalid_argument("MomentAccumulator::push: dimension mismatch");
  }
  pooled_.push(observation, dim_);
  batches_[static_cast<std::size_t>(count_ % batch_count_)].push(observation, dim_);
  ++count_;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.dim_ != dim_ || other.batch_count_ != batch_count_) {
    throw std::invalid_argument("MomentAccumulator::merge: shape mismatch");
  }
  const std::int64_t offset = count_;
  pooled_.merge(other.pooled_, dim_);
  for (int b = 0; b < batch_count_; ++b) {
    const int target = static_cast<int>((b + offset) % batch_count_);
    batches_[static_cast<std::size_t>(target)].merge(
        other.batches_[static_cast<std::size_t>(b)], dim_);
  }
  count_ += other.count_;
}

double MomentAccumulator::mean(int i) const { return pooled_.mean[static_cast<std::size_t>(i)]; }

double MomentAccumulator::covariance(int i, int j) const {
  if (count_ < 2) throw DegenerateDataError("covariance: need at least 2 observations");
  return pooled_.comoment(i, j, dim_) / static_cast<double>(count_ - 1);
}

double MomentAccumulator::pearson(const Pooled& p, int i, int j, int dim) {
  const double cij = p.comoment(i, j, dim);
  const double cii = p.comoment(i, i, dim);
  const double cjj = p.comoment(j, j, dim);
  if (!(cii > 0.0) || !(cjj > 0.0)) {
    throw DegenerateDataError("correlation: a marginal variance is zero");
  }
  if (cij == cii && cii == cjj) return 1.0;  // duplicated coordinates
  const double rho = cij / (std::sqrt(cii) * std::sqrt(cjj));
  return std::clamp(rho, -1.0, 1.0);
}

std::pair<double, double> MomentAccumulator::correlation(int i, int j) const {
  if (i == j) return {1.0, 0.0};
  if (count_ < 2 * batch_count_) {
    throw DegenerateDataError("correlation: need at least 2 observations per batch");
  }
  const double rho = pearson(pooled_, i, j, dim_);
  double sum = 0.0, sumsq = 0.0;
  int used = 0;
  for (const auto& b : batches_) {
    if (b.count < 2 || !(b.comoment(i, i, dim_) > 0.0) || !(b.comoment(j, j, dim_) > 0.0)) {
      continue;
    }
    const double rb = pearson(b, i, j, dim_);
    sum += rb;
    sumsq += rb * rb;
    ++used;
  }
  if (used < 2) throw DegenerateDataError("correlation: too few usable batches");
  const double var_b = std::max(0.0, (sumsq - sum * sum / used) / (used - 1));
  return {rho, std::sqrt(var_b / used)};
}

std::pair<double, double> MomentAccumulator::residual_identity(int i, int j) const {
  if (count_ < 2) throw DegenerateDataError("residual_identity: need >= 2 observations");
  const double var_u = covariance(i, i);
  const double var_v = covariance(j, j);
  if (!(var_u > 0.0)) {
    throw DegenerateDataError("residual_identity: Var(U) is zero");
  }
  double lhs, rho;
  if (var_v > 0.0) {
    const double cov = covariance(i, j);
    const double lambda = cov / var_v;  // closed-form minimizer
    lhs = var_u - 2.0 * lambda * cov + lambda * lambda * var_v;
    rho = pearson(pooled_, i, j, dim_);
  } else {
    lhs = var_u;  // Var(U - lambda V) = Var(U) for every lambda
    rho = 0.0;
  }
  const double rhs = (1.0 - rho * rho) * var_u;
  return {lhs, rhs};
}

ExponentFit fit_loglog(std::span<const FitPoint> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("fit_loglog: need at least 3 points");
  }
  ExponentFit fit;
  fit.points.reserve(points.size());
  for (const auto& p : points) {
    if (!(p.x > 0.0) || !(p.y > 0.0) || !(p.weight > 0.0)) {
      throw std::invalid_argument("fit_loglog: coordinates and weights must be positive");
    }
    fit.points.push_back({std::log(p.x), std::log(p.y), p.weight});
  }
  double wsum = 0, mx = 0, my = 0;
  for (const auto& p : fit.points) {
    wsum += p.weight;
    mx += p.weight * p.x;
    my += p.weight * p.y;
  }
  mx /= wsum;
  my /= wsum;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : fit.points) {
    const double dx = p.x - mx, dy = p.y - my;
    sxx += p.weight * dx * dx;
    sxy += p.weight * dx * dy;
    syy += p.weight * dy * dy;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_loglog: degenerate abscissae");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (const auto& p : fit.points) {
    const double e = p.y - (fit.intercept + fit.slope * p.x);
    rss += p.weight * e * e;
  }
  const double dof = static_cast<double>(fit.points.size()) - 2.0;
  fit.slope_stderr = std::sqrt(std::max(0.0, rss / dof) / sxx);
  fit.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  return fit;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: inputs must be nonempty");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < sa.size() && ib < sb.size()) {
    const double t = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= t) ++ia;
    while (ib < sb.size() && sb[ib] <= t) ++ib;
    d = std::max(d, std::fabs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  // c(alpha) = sqrt(-ln(alpha/2)/2) at alpha = 0.01.
  const double c01 = 1.6276236115189501;
  return {d, c01 * std::sqrt((na + nb) / (na * nb))};
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace lpplab
