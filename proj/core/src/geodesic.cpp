#include "lpplab/geodesic.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lpplab {

namespace {

// One backtrack step on a pair of adjacent rows.  Missing predecessors count
// as -inf; exact ties step left.
std::int64_t step_down(std::int64_t x, std::int64_t prev_xlo,
                       std::span<const double> prev_values) {
  const std::int64_t pn = static_cast<std::int64_t>(prev_values.size());
  const std::int64_t il = x - 1 - prev_xlo;
  const std::int64_t ib = x - prev_xlo;
  const double left =
      (il >= 0 && il < pn) ? prev_values[static_cast<std::size_t>(il)] : detail::kNegInf;
  const double below =
      (ib >= 0 && ib < pn) ? prev_values[static_cast<std::size_t>(ib)] : detail::kNegInf;
  return left >= below ? x - 1 : x;
}

}  // namespace

Geodesic trace_geodesic(const PassageSurface& surface, LatticePoint endpoint) {
  if (!surface.box().contains(endpoint)) {
    throw std::out_of_range("trace_geodesic: endpoint outside surface scope");
  }
  if (surface.storage_ == Storage::kWavefront) {
    throw std::invalid_argument("trace_geodesic: wavefront surfaces are not traceable");
  }

  const LatticePoint q = surface.to_internal(endpoint);
  std::vector<LatticePoint> down;  // internal, from endpoint toward (0,0)
  down.reserve(static_cast<std::size_t>(q.level() + 1));
  down.push_back(q);

  if (surface.storage_ == Storage::kFullGrid) {
    const double* g = surface.grid_.data();
    const std::int64_t w = surface.width_;
    std::int64_t ix = q.x, iy = q.y;
    while (ix + iy > 0) {
      const double left = ix > 0 ? g[iy * w + ix - 1] : detail::kNegInf;
      const double below = iy > 0 ? g[(iy - 1) * w + ix] : detail::kNegInf;
      if (left >= below) {
        --ix;
      } else {
        --iy;
      }
      down.push_back({ix, iy});
    }
  } else {
    std::int64_t ix = q.x, iy = q.y;
    while (ix + iy > 0) {
      const auto cone = surface.recompute_cone(ix, iy);
      for (std::size_t i = cone.size() - 1; i > 0; --i) {
        const auto& prev = cone[i - 1];
        ix = step_down(ix, prev.xlo, prev.values);
        iy = prev.level - ix;
        down.push_back({ix, iy});
      }
    }
  }

  Geodesic g;
  g.vertices.resize(down.size());
  if (surface.orientation_ == Orientation::kForward) {
    for (std::size_t i = 0; i < down.size(); ++i) {
      g.vertices[down.size() - 1 - i] = surface.to_user(down[i]);
    }
  } else {
    // Internal descent maps to ascending user levels already.
    for (std::size_t i = 0; i < down.size(); ++i) {
      g.vertices[i] = surface.to_user(down[i]);
    }
  }
  g.total_weight = surface.internal_value(q.x, q.y);
  return g;
}

std::int64_t transversal_fluctuation(const Geodesic& g) {
  std::int64_t tf = 0;
  for (const auto& p : g.vertices) tf = std::max(tf, std::llabs(p.x - p.y));
  return tf;
}

LatticePoint cross_antidiagonal(const Geodesic& g, std::int64_t level) {
  const std::int64_t d0 = g.source().level();
  const std::int64_t d1 = g.endpoint().level();
  if (level < d0 || level > d1) {
    throw std::out_of_range("cross_antidiagonal: level " + std::to_string(level) +
                            " outside [" + std::to_string(d0) + "," +
                            std::to_string(d1) + "]");
  }
  return g.vertices[static_cast<std::size_t>(level - d0)];
}

std::int64_t overlap(const Geodesic& a, const Geodesic& b) {
  const std::int64_t lo = std::max(a.source().level(), b.source().level());
  const std::int64_t hi = std::min(a.endpoint().level(), b.endpoint().level());
  std::int64_t count = 0;
  for (std::int64_t d = lo; d <= hi; ++d) {
    if (a.vertices[static_cast<std::size_t>(d - a.source().level())] ==
        b.vertices[static_cast<std::size_t>(d - b.source().level())]) {
      ++count;
    }
  }
  return count;
}

DecompositionSample decompose(const WeightField& field, std::int64_t r, std::int64_t n,
                              double theta, std::int64_t full_cell_limit) {
  if (r <= 0 || r >= n) {
    throw std::out_of_range("decompose: need 0 < r < n");
  }
  const Box whole{{0, 0}, {n, n}};
  const std::int64_t extra_level = 2 * r;
  const bool full = whole.cells() <= full_cell_limit;
  const PassageSurface fwd =
      full ? make_full_surface(field, whole, Orientation::kForward)
           : make_checkpointed_surface(field, whole, Orientation::kForward,
                                       kDefaultCheckpointStride,
                                       std::span<const std::int64_t>(&extra_level, 1));

  DecompositionSample out;
  out.r = r;
  out.n = n;
  out.T_n = fwd.value_at({n, n});
  out.X = fwd.value_at({r, r});

  const Geodesic gamma_n = trace_geodesic(fwd, {n, n});
  out.v = cross_antidiagonal(gamma_n, 2 * r);
  out.Z = fwd.value_at(out.v);

  // Refold the suffix in DP accumulation order: seeded with Z it must land on
  // T_n bit-for-bit, seeded with w(v) it yields the leg weight W.
  out.w_v = field.weight(out.v);
  double refold = out.Z;
  double suffix = out.w_v;
  for (std::size_t i = static_cast<std::size_t>(2 * r + 1); i < gamma_n.vertices.size();
       ++i) {
    const double w = field.weight(gamma_n.vertices[i]);
    refold = w + refold;
    suffix = w + suffix;
  }
  out.junction_exact = (refold == out.T_n);
  out.W = suffix;

  // Point-to-line maximum over the level-2r slice, ties toward smaller |s|
  // then positive s.
  {
    const std::int64_t xlo = std::max<std::int64_t>(0, 2 * r - n);
    const std::int64_t xhi = std::min(n, 2 * r);
    double best = detail::kNegInf;
    bool first = true;
    for (std::int64_t a = 0; a <= std::max(xhi - r, r - xlo); ++a) {
      for (const std::int64_t s : {a, -a}) {
        const std::int64_t x = r + s;
        if (x < xlo || x > xhi) continue;
        const double val = fwd.value_at({x, 2 * r - x});
        if (first || val > best) {
          best = val;
          first = false;
        }
        if (a == 0) break;
      }
    }
    out.X_star = best;
  }

  out.Y = point_probe(ReflectedSource<WeightField>{&field, n, n},
                      Box{{0, 0}, {n - r, n - r}}, {n - r, n - r});

  const auto [x_theta, x_star2] = constrained_diag(field, r, theta);
  out.X_theta = x_theta;
  out.X_star2 = x_star2;

  const Box small{{0, 0}, {r, r}};
  const PassageSurface fwd_r =
      small.cells() <= full_cell_limit
          ? make_full_surface(field, small, Orientation::kForward)
          : make_checkpointed_surface(field, small, Orientation::kForward);
  const Geodesic gamma_r = trace_geodesic(fwd_r, {r, r});
  Geodesic prefix;
  prefix.vertices.assign(gamma_n.vertices.begin(),
                         gamma_n.vertices.begin() + (2 * r + 1));
  prefix.total_weight = out.Z;
  out.overlap_count = overlap(gamma_r, prefix);
  return out;
}

}  // namespace lpplab
