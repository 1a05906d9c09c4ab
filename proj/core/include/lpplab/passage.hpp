#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lpplab/errors.hpp"
#include "lpplab/field.hpp"

namespace lpplab {

struct Box {
  LatticePoint lo;
  LatticePoint hi;

  std::int64_t width() const { return hi.x - lo.x + 1; }
  std::int64_t height() const { return hi.y - lo.y + 1; }
  std::int64_t cells() const { return width() * height(); }
  bool contains(LatticePoint p) const { return precedes(lo, p) && precedes(p, hi); }
};

// Default full-grid budget: boxes beyond this many cells must go through the
// wavefront or checkpointed mode.
inline constexpr std::int64_t kFullGridCellBudget = std::int64_t{1} << 24;
inline constexpr std::int64_t kDefaultCheckpointStride = 1024;

enum class Orientation { kForward, kBackward };
enum class Storage { kFullGrid, kCheckpointed, kWavefront };

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline void validate_box(const Box& box) {
  if (box.lo.x < 0 || box.lo.y < 0) {
    throw AdmissibilityError("box must lie in the nonnegative quadrant");
  }
  if (!precedes(box.lo, box.hi)) {
    throw AdmissibilityError("box corner must dominate its source");
  }
}

// ceil(a/2) and floor(a/2) for possibly negative a.
inline std::int64_t ceil_half(std::int64_t a) { return a >= 0 ? (a + 1) / 2 : -((-a) / 2); }
inline std::int64_t floor_half(std::int64_t a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

}  // namespace detail

// Anti-diagonal wavefront sweep of the last-passage recursion
//   T(v) = w(v) + max(T(v-(1,0)), T(v-(0,1)))
// over `box`, with missing neighbours treated as -inf and
// T(box.lo) = w(box.lo).  After each level d the hook is invoked as
// hook(d, xlo, values) where values[i] = T(xlo + i, d - xlo - i).
// Memory is O(min(width, height)); cell values are identical to the
// full-grid recursion by purity of the recurrence.
template <WeightSource Src, class Hook>
void sweep_box_until(const Src& src, const Box& box, std::int64_t last_level, Hook&& hook) {
  detail::validate_box(box);
  const std::int64_t d0 = box.lo.level();
  const std::int64_t d1 = std::min(last_level, box.hi.level());
  if (d1 < d0) return;

  const std::int64_t cap = std::min({box.width(), box.height(), d1 - d0 + 1});
  std::vector<double> row_a(static_cast<std::size_t>(cap));
  std::vector<double> row_b(static_cast<std::size_t>(cap));
  double* prev = row_a.data();
  double* cur = row_b.data();
  std::int64_t pxlo = 0, pxhi = -1;

  for (std::int64_t d = d0; d <= d1; ++d) {
    const std::int64_t xlo = std::max(box.lo.x, d - box.hi.y);
    const std::int64_t xhi = std::min(box.hi.x, d - box.lo.y);
    if (d == d0) {
      cur[0] = src.weight_at(xlo, d - xlo);
    } else {
      std::int64_t start = xlo, end = xhi;
      if (xlo == pxlo) {  // leftmost cell has no left predecessor
        cur[0] = src.weight_at(xlo, d - xlo) + prev[0];
        start = xlo + 1;
      }
      if (xhi == pxhi + 1 && xhi >= start) {  // rightmost cell has no below predecessor
        cur[xhi - xlo] = src.weight_at(xhi, d - xhi) + prev[xhi - 1 - pxlo];
        end = xhi - 1;
      }
      const double* pl = prev + (start - 1 - pxlo);
      double* c = cur + (start - xlo);
      for (std::int64_t x = start; x <= end; ++x, ++pl, ++c) {
        *c = src.weight_at(x, d - x) + std::max(pl[0], pl[1]);
      }
    }
    hook(d, xlo, std::span<const double>(cur, static_cast<std::size_t>(xhi - xlo + 1)));
    std::swap(prev, cur);
    pxlo = xlo;
    pxhi = xhi;
  }
}

template <WeightSource Src, class Hook>
void sweep_box(const Src& src, const Box& box, Hook&& hook) {
  sweep_box_until(src, box, box.hi.level(), std::forward<Hook>(hook));
}

// Passage time T_{box.lo, target} without storing the surface.
template <WeightSource Src>
double point_probe(const Src& src, const Box& box, LatticePoint target) {
  if (!box.contains(target)) {
    throw std::out_of_range("point_probe: target outside box");
  }
  double out = detail::kNegInf;
  const std::int64_t td = target.level();
  sweep_box_until(src, Box{box.lo, target}, td,
                  [&](std::int64_t d, std::int64_t xlo, std::span<const double> v) {
                    if (d == td) out = v[static_cast<std::size_t>(target.x - xlo)];
                  });
  return out;
}

// View of `src` rotated by 180 degrees about the centre of [lo, hi]; turns
// the to-sink recursion into a plain forward sweep.
template <WeightSource Src>
struct ReflectedSource {
  const Src* src;
  std::int64_t cx;  // lo.x + hi.x
  std::int64_t cy;  // lo.y + hi.y
  double weight_at(std::int64_t x, std::int64_t y) const {
    return src->weight_at(cx - x, cy - y);
  }
};

// T_{0,(k,k)} for k = 0..n in a single O(n)-memory sweep.
template <WeightSource Src>
std::vector<double> diagonal_profile(const Src& src, std::int64_t n) {
  if (n < 0) throw std::out_of_range("diagonal_profile: n must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(n + 1));
  sweep_box(src, Box{{0, 0}, {n, n}},
            [&](std::int64_t d, std::int64_t xlo, std::span<const double> v) {
              if ((d & 1) == 0) {
                const std::int64_t k = d / 2;
                out[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k - xlo)];
              }
            });
  return out;
}

// Slice of the weight profile L_{n,s} = T_{0,(n+s,n-s)} for |s| <= s_max.
struct Profile {
  std::int64_t n = 0;
  std::int64_t s_max = 0;
  std::vector<double> values;  // index s + s_max

  double at(std::int64_t s) const { return values[static_cast<std::size_t>(s + s_max)]; }
};

template <WeightSource Src>
Profile antidiagonal_profile(const Src& src, std::int64_t n, std::int64_t s_max) {
  if (s_max < 0 || s_max >= n) {
    throw std::out_of_range("antidiagonal_profile: need 0 <= s_max < n");
  }
  Profile prof{n, s_max, std::vector<double>(static_cast<std::size_t>(2 * s_max + 1))};
  const Box box{{0, 0}, {n + s_max, n + s_max}};
  sweep_box_until(src, box, 2 * n,
                  [&](std::int64_t d, std::int64_t xlo, std::span<const double> v) {
                    if (d == 2 * n) {
                      for (std::int64_t s = -s_max; s <= s_max; ++s) {
                        prof.values[static_cast<std::size_t>(s + s_max)] =
                            v[static_cast<std::size_t>(n + s - xlo)];
                      }
                    }
                  });
  return prof;
}

// Thin anti-diagonal strip 0 <= x+y <= 2r, |x-y| <= width, width = floor(theta r^{2/3}).
struct StripRegion {
  std::int64_t r = 0;
  double theta = 0.0;
  std::int64_t width = 0;

  static StripRegion make(std::int64_t r, double theta) {
    if (r < 1 || !(theta > 0.0)) {
      throw std::invalid_argument("StripRegion: need r >= 1 and theta > 0");
    }
    const double r23 = std::cbrt(static_cast<double>(r) * static_cast<double>(r));
    return StripRegion{r, theta, static_cast<std::int64_t>(std::floor(theta * r23))};
  }

  bool contains(LatticePoint p) const {
    const std::int64_t d = p.level();
    return p.x >= 0 && p.y >= 0 && d <= 2 * r && std::llabs(p.x - p.y) <= width;
  }
};

// Wavefront sweep restricted to |x - y| <= strip_width within [box.lo, box.hi].
template <WeightSource Src, class Hook>
void sweep_strip(const Src& src, const Box& box, std::int64_t strip_width, Hook&& hook) {
  detail::validate_box(box);
  const std::int64_t d0 = box.lo.level();
  const std::int64_t d1 = box.hi.level();
  const std::int64_t cap = std::min({box.width(), box.height(), strip_width + 1});
  std::vector<double> row_a(static_cast<std::size_t>(cap));
  std::vector<double> row_b(static_cast<std::size_t>(cap));
  double* prev = row_a.data();
  double* cur = row_b.data();
  std::int64_t pxlo = 0, pxhi = -1;

  for (std::int64_t d = d0; d <= d1; ++d) {
    const std::int64_t xlo =
        std::max({box.lo.x, d - box.hi.y, detail::ceil_half(d - strip_width)});
    const std::int64_t xhi =
        std::min({box.hi.x, d - box.lo.y, detail::floor_half(d + strip_width)});
    if (xhi < xlo) {
      throw AdmissibilityError("sweep_strip: no admissible cell at level " + std::to_string(d));
    }
    if (d == d0) {
      cur[0] = src.weight_at(xlo, d - xlo);
    } else {
      for (std::int64_t x = xlo; x <= xhi; ++x) {
        const double left =
            (x - 1 >= pxlo && x - 1 <= pxhi) ? prev[x - 1 - pxlo] : detail::kNegInf;
        const double below = (x >= pxlo && x <= pxhi) ? prev[x - pxlo] : detail::kNegInf;
        cur[x - xlo] = src.weight_at(x, d - x) + std::max(left, below);
      }
    }
    hook(d, xlo, std::span<const double>(cur, static_cast<std::size_t>(xhi - xlo + 1)));
    std::swap(prev, cur);
    pxlo = xlo;
    pxhi = xhi;
  }
}

// Best path weight from u to v over monotone paths that do not exit the strip.
template <WeightSource Src>
double passage_constrained(const Src& src, const StripRegion& region, LatticePoint u,
                           LatticePoint v) {
  if (!precedes(u, v)) {
    throw AdmissibilityError("passage_constrained: endpoints violate the partial order");
  }
  if (!region.contains(u) || !region.contains(v)) {
    throw AdmissibilityError("passage_constrained: endpoint outside strip region");
  }
  if (region.width == 0 && !(u == v)) {
    throw AdmissibilityError("passage_constrained: width-0 strip admits no path");
  }
  double out = detail::kNegInf;
  const std::int64_t td = v.level();
  sweep_strip(src, Box{u, v}, region.width,
              [&](std::int64_t d, std::int64_t xlo, std::span<const double> vals) {
                if (d == td) out = vals[static_cast<std::size_t>(v.x - xlo)];
              });
  return out;
}

// X_theta (strip R_theta) and the paper's X_* (strip R_{2 theta}) for the
// diagonal passage 0 -> (r, r).
template <WeightSource Src>
std::pair<double, double> constrained_diag(const Src& src, std::int64_t r, double theta) {
  const LatticePoint origin{0, 0};
  const LatticePoint corner{r, r};
  const double x_theta =
      passage_constrained(src, StripRegion::make(r, theta), origin, corner);
  const double x_star2 =
      passage_constrained(src, StripRegion::make(r, 2.0 * theta), origin, corner);
  return {x_theta, x_star2};
}

struct SegmentMax {
  double value = 0.0;
  LatticePoint argmax;
};

// Maximize T_{0,(r+s,r-s)} over s in [s_lo, s_hi].  Ties go to smaller |s|,
// then to positive s.
template <WeightSource Src>
SegmentMax point_to_segment(const Src& src, std::int64_t r, std::int64_t s_lo,
                            std::int64_t s_hi) {
  if (s_lo > s_hi) throw std::out_of_range("point_to_segment: empty segment");
  if (s_lo < -r || s_hi > r) {
    throw std::out_of_range("point_to_segment: segment outside [-r, r]");
  }
  std::vector<double> slice(static_cast<std::size_t>(s_hi - s_lo + 1));
  const Box box{{0, 0}, {r + s_hi, r - s_lo}};
  sweep_box_until(src, box, 2 * r,
                  [&](std::int64_t d, std::int64_t xlo, std::span<const double> v) {
                    if (d == 2 * r) {
                      for (std::int64_t s = s_lo; s <= s_hi; ++s) {
                        slice[static_cast<std::size_t>(s - s_lo)] =
                            v[static_cast<std::size_t>(r + s - xlo)];
                      }
                    }
                  });
  SegmentMax best{detail::kNegInf, {0, 0}};
  bool first = true;
  // |s| ascending, positive before negative, strict improvement only.
  for (std::int64_t a = 0; a <= std::max(std::llabs(s_lo), std::llabs(s_hi)); ++a) {
    for (const std::int64_t s : {a, -a}) {
      if (s < s_lo || s > s_hi) continue;
      if (s == 0 && a != 0) continue;
      const double val = slice[static_cast<std::size_t>(s - s_lo)];
      if (first || val > best.value) {
        best = SegmentMax{val, {r + s, r - s}};
        first = false;
      }
      if (a == 0) break;
    }
  }
  return best;
}

struct Geodesic;  // geodesic.hpp

// Stored passage surface.  Backward surfaces are represented internally as a
// forward problem on the 180-degree-rotated weights, so value_at(w) returns
// T_{w, sink} and every query is bit-identical to a direct mirrored recursion.
class PassageSurface {
 public:
  Storage storage() const { return storage_; }
  Orientation orientation() const { return orientation_; }
  const Box& box() const { return box_; }
  // The fixed endpoint: source for forward surfaces, sink for backward ones.
  LatticePoint anchor() const {
    return orientation_ == Orientation::kForward ? box_.lo : box_.hi;
  }

  // Passage time at p: T_{source,p} (forward) or T_{p,sink} (backward).
  // Wavefront surfaces answer only on their stored level.
  double value_at(LatticePoint p) const;

  template <WeightSource Src>
  friend PassageSurface make_full_surface(const Src&, const Box&, Orientation,
                                          std::int64_t);
  template <WeightSource Src>
  friend PassageSurface make_checkpointed_surface(const Src&, const Box&, Orientation,
                                                  std::int64_t,
                                                  std::span<const std::int64_t>);
  template <WeightSource Src>
  friend PassageSurface make_wavefront_surface(const Src&, const Box&, Orientation);
  friend Geodesic trace_geodesic(const PassageSurface&, LatticePoint);

 private:
  struct Row {
    std::int64_t level;  // internal level = ix + iy
    std::int64_t xlo;    // internal x of values[0]
    std::vector<double> values;
  };

  PassageSurface(Storage storage, Orientation orientation, Box box)
      : storage_(storage), orientation_(orientation), box_(box) {}

  LatticePoint to_internal(LatticePoint p) const {
    return orientation_ == Orientation::kForward
               ? LatticePoint{p.x - box_.lo.x, p.y - box_.lo.y}
               : LatticePoint{box_.hi.x - p.x, box_.hi.y - p.y};
  }
  LatticePoint to_user(LatticePoint q) const {
    return orientation_ == Orientation::kForward
               ? LatticePoint{q.x + box_.lo.x, q.y + box_.lo.y}
               : LatticePoint{box_.hi.x - q.x, box_.hi.y - q.y};
  }

  std::int64_t internal_xlo(std::int64_t d) const { return std::max<std::int64_t>(0, d - (height_ - 1)); }
  std::int64_t internal_xhi(std::int64_t d) const { return std::min(width_ - 1, d); }

  double internal_value(std::int64_t ix, std::int64_t iy) const;
  const Row& checkpoint_at_or_below(std::int64_t level) const;
  // DP rows over the ancestor cone of (ix, iy), seeded at the nearest stored
  // checkpoint; rows[i] is the cone slice at level seed + i.
  std::vector<Row> recompute_cone(std::int64_t ix, std::int64_t iy) const;

  Storage storage_;
  Orientation orientation_;
  Box box_;
  std::int64_t width_ = 0, height_ = 0;
  std::vector<double> grid_;                      // full grid, row-major iy * width + ix
  std::int64_t checkpoint_stride_ = 0;            // checkpointed
  std::vector<Row> checkpoints_;                  // ascending by level; includes level 0
  Row wavefront_;                                 // wavefront storage
  std::function<double(std::int64_t, std::int64_t)> weight_fn_;  // internal coords
};

namespace detail {

template <WeightSource Src>
std::function<double(std::int64_t, std::int64_t)> internal_weight_fn(const Src& src,
                                                                     const Box& box,
                                                                     Orientation orientation) {
  if (orientation == Orientation::kForward) {
    const std::int64_t bx = box.lo.x, by = box.lo.y;
    return [&src, bx, by](std::int64_t ix, std::int64_t iy) {
      return src.weight_at(bx + ix, by + iy);
    };
  }
  const std::int64_t bx = box.hi.x, by = box.hi.y;
  return [&src, bx, by](std::int64_t ix, std::int64_t iy) {
    return src.weight_at(bx - ix, by - iy);
  };
}

}  // namespace detail

// Full-grid surface; throws CapacityError beyond the cell budget.
template <WeightSource Src>
PassageSurface make_full_surface(const Src& src, const Box& box, Orientation orientation,
                                 std::int64_t cell_budget = kFullGridCellBudget) {
  detail::validate_box(box);
  if (box.cells() > cell_budget) {
    throw CapacityError("full-grid surface of " + std::to_string(box.cells()) +
                        " cells exceeds the budget of " + std::to_string(cell_budget) +
                        "; use the wavefront or checkpointed mode");
  }
  PassageSurface s(Storage::kFullGrid, orientation, box);
  s.width_ = box.width();
  s.height_ = box.height();
  s.weight_fn_ = detail::internal_weight_fn(src, box, orientation);
  const std::int64_t w = s.width_, h = s.height_;
  s.grid_.resize(static_cast<std::size_t>(w * h));
  double* g = s.grid_.data();
  const auto& wf = s.weight_fn_;
  g[0] = wf(0, 0);
  for (std::int64_t ix = 1; ix < w; ++ix) g[ix] = wf(ix, 0) + g[ix - 1];
  for (std::int64_t iy = 1; iy < h; ++iy) {
    double* row = g + iy * w;
    const double* below = row - w;
    row[0] = wf(0, iy) + below[0];
    for (std::int64_t ix = 1; ix < w; ++ix) {
      row[ix] = wf(ix, iy) + std::max(row[ix - 1], below[ix]);
    }
  }
  return s;
}

// O(width * (levels/stride)) storage; geodesics recovered by block
// recomputation.  `extra_levels` (internal levels, i.e. relative to the
// anchor) are stored in addition to the regular stride so callers can make
// a slice of interest directly addressable.
template <WeightSource Src>
PassageSurface make_checkpointed_surface(const Src& src, const Box& box,
                                         Orientation orientation,
                                         std::int64_t stride = kDefaultCheckpointStride,
                                         std::span<const std::int64_t> extra_levels = {}) {
  detail::validate_box(box);
  if (stride < 1) throw std::invalid_argument("checkpoint stride must be >= 1");
  PassageSurface s(Storage::kCheckpointed, orientation, box);
  s.width_ = box.width();
  s.height_ = box.height();
  s.checkpoint_stride_ = stride;
  s.weight_fn_ = detail::internal_weight_fn(src, box, orientation);
  const Box internal{{0, 0}, {s.width_ - 1, s.height_ - 1}};
  const std::int64_t d1 = internal.hi.level();
  std::vector<std::int64_t> extras(extra_levels.begin(), extra_levels.end());
  std::sort(extras.begin(), extras.end());
  struct Shim {
    const std::function<double(std::int64_t, std::int64_t)>* fn;
    double weight_at(std::int64_t x, std::int64_t y) const { return (*fn)(x, y); }
  } shim{&s.weight_fn_};
  sweep_box(shim, internal, [&](std::int64_t d, std::int64_t xlo, std::span<const double> v) {
    if (d % stride == 0 || d == d1 ||
        std::binary_search(extras.begin(), extras.end(), d)) {
      s.checkpoints_.push_back(
          PassageSurface::Row{d, xlo, std::vector<double>(v.begin(), v.end())});
    }
  });
  return s;
}

// Only the final anti-diagonal of the box is retained.
template <WeightSource Src>
PassageSurface make_wavefront_surface(const Src& src, const Box& box,
                                      Orientation orientation) {
  detail::validate_box(box);
  PassageSurface s(Storage::kWavefront, orientation, box);
  s.width_ = box.width();
  s.height_ = box.height();
  s.weight_fn_ = detail::internal_weight_fn(src, box, orientation);
  const Box internal{{0, 0}, {s.width_ - 1, s.height_ - 1}};
  const std::int64_t d1 = internal.hi.level();
  struct Shim {
    const std::function<double(std::int64_t, std::int64_t)>* fn;
    double weight_at(std::int64_t x, std::int64_t y) const { return (*fn)(x, y); }
  } shim{&s.weight_fn_};
  sweep_box(shim, internal, [&](std::int64_t d, std::int64_t xlo, std::span<const double> v) {
    if (d == d1) {
      s.wavefront_ = PassageSurface::Row{d, xlo, std::vector<double>(v.begin(), v.end())};
    }
  });
  return s;
}

// T at every point of [source, corner], stored.
template <WeightSource Src>
PassageSurface passage_full(const Src& src, LatticePoint source, LatticePoint corner,
                            std::int64_t cell_budget = kFullGridCellBudget) {
  if (!precedes(source, corner)) {
    throw AdmissibilityError("passage_full: source must precede corner");
  }
  return make_full_surface(src, Box{source, corner}, Orientation::kForward, cell_budget);
}

// Backward surface: value_at(w) = T_{w, sink} for w in `scope`.
template <WeightSource Src>
PassageSurface backward_surface(const Src& src, LatticePoint sink, const Box& scope,
                                std::int64_t cell_budget = kFullGridCellBudget) {
  if (!(scope.hi == sink)) {
    throw AdmissibilityError("backward_surface: scope corner must equal the sink");
  }
  return make_full_surface(src, scope, Orientation::kBackward, cell_budget);
}

}  // namespace lpplab
