#pragma once

#include <cstdint>
#include <vector>

#include "lpplab/field.hpp"
#include "lpplab/passage.hpp"

namespace lpplab {

// A maximizing directed path.  Vertices run from source to endpoint in steps
// of (1,0) or (0,1), so the path meets each anti-diagonal level exactly once
// and vertices[d - source.level()] is the crossing of level d.
struct Geodesic {
  std::vector<LatticePoint> vertices;
  double total_weight = 0.0;  // equals the surface value at the endpoint, exactly

  const LatticePoint& source() const { return vertices.front(); }
  const LatticePoint& endpoint() const { return vertices.back(); }
  std::int64_t length() const { return static_cast<std::int64_t>(vertices.size()); }
};

// Backtrack the argmax predecessor from `endpoint`.  On an exact tie the step
// goes to the left predecessor; ties have probability zero under continuous
// weights, the rule only pins down degenerate inputs.  Works on full-grid and
// checkpointed surfaces (checkpointed ones recompute one block at a time).
// For backward surfaces the result runs from `endpoint` to the sink.
Geodesic trace_geodesic(const PassageSurface& surface, LatticePoint endpoint);

// Max of |x - y| along the path.
std::int64_t transversal_fluctuation(const Geodesic& g);

// The unique vertex of g with x + y == level.
LatticePoint cross_antidiagonal(const Geodesic& g, std::int64_t level);

// Number of common vertices.
std::int64_t overlap(const Geodesic& a, const Geodesic& b);

// Per-field record of the polymer decomposition at the line x + y = 2r:
// X = T_r, Y = T_{r,n}, v = the crossing of Gamma_n, Z and W the two legs of
// Gamma_n at v (both counting the weight of v), X_star the point-to-line
// weight, X_theta / X_star2 the strip-constrained diagonal weights.
struct DecompositionSample {
  std::int64_t r = 0;
  std::int64_t n = 0;
  double X = 0, Y = 0, Z = 0, W = 0;
  double X_star = 0, X_theta = 0, X_star2 = 0;
  LatticePoint v;
  double w_v = 0;  // vertex weight at v, counted by both Z and W
  std::int64_t overlap_count = 0;
  double T_n = 0;
  // Junction identity Z + W - w(v) = T_n, verified exactly: refolding the
  // traced suffix in DP accumulation order seeded with Z must reproduce T_n
  // bit-for-bit.
  bool junction_exact = false;
};

// Forward DP from 0, backward probe from (n,n), trace of Gamma_n, and the
// strip-constrained weights, evaluated on one environment.
DecompositionSample decompose(const WeightField& field, std::int64_t r, std::int64_t n,
                              double theta,
                              std::int64_t full_cell_limit = kFullGridCellBudget / 4);

}  // namespace lpplab
