#pragma once

#include <cstdint>
#include <vector>

#include "lpplab/field.hpp"
#include "lpplab/passage.hpp"

// Brute-force reference implementations backing `selftest` and the test
// oracles.  Deliberately naive and independent of the sweep kernels.

namespace lpplab::reference {

// Maximum path weight from box.lo to box.hi by exhaustive enumeration of
// monotone paths.  strip_width >= 0 restricts to |x - y| <= strip_width;
// pass -1 for unconstrained.  Exponential in the box size; keep boxes small.
template <WeightSource Src>
double enumerate_max_path(const Src& src, const Box& box, std::int64_t strip_width = -1) {
  double best = -std::numeric_limits<double>::infinity();
  bool found = false;
  std::vector<LatticePoint> stack;
  // Depth-first over steps, accumulating the weight in path order.
  auto visit = [&](auto&& self, LatticePoint p, double acc) -> void {
    if (strip_width >= 0 && std::llabs(p.x - p.y) > strip_width) return;
    acc = src.weight_at(p.x, p.y) + acc;
    if (p == box.hi) {
      if (!found || acc > best) best = acc;
      found = true;
      return;
    }
    if (p.x < box.hi.x) self(self, {p.x + 1, p.y}, acc);
    if (p.y < box.hi.y) self(self, {p.x, p.y + 1}, acc);
  };
  visit(visit, box.lo, 0.0);
  return best;
}

struct TwoPassMoments {
  std::vector<double> mean;
  std::vector<std::vector<double>> covariance;  // sample covariance, n-1 normalized
};

// Textbook two-pass mean and covariance.
TwoPassMoments two_pass_moments(const std::vector<std::vector<double>>& rows);

}  // namespace lpplab::reference
