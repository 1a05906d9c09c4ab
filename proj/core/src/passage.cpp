#include "lpplab/passage.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace lpplab {

double PassageSurface::value_at(LatticePoint p) const {
  if (!box_.contains(p)) {
    throw std::out_of_range("PassageSurface::value_at: point outside scope");
  }
  const LatticePoint q = to_internal(p);
  return internal_value(q.x, q.y);
}

double PassageSurface::internal_value(std::int64_t ix, std::int64_t iy) const {
  switch (storage_) {
    case Storage::kFullGrid:
      return grid_[static_cast<std::size_t>(iy * width_ + ix)];
    case Storage::kWavefront: {
      if (ix + iy != wavefront_.level) {
        throw std::out_of_range(
            "PassageSurface: wavefront surface stores only level " +
            std::to_string(wavefront_.level));
      }
      return wavefront_.values[static_cast<std::size_t>(ix - wavefront_.xlo)];
    }
    case Storage::kCheckpointed: {
      const std::int64_t d = ix + iy;
      const Row& seed = checkpoint_at_or_below(d);
      if (seed.level == d) {
        return seed.values[static_cast<std::size_t>(ix - seed.xlo)];
      }
      const std::vector<Row> cone = recompute_cone(ix, iy);
      const Row& top = cone.back();
      return top.values[static_cast<std::size_t>(ix - top.xlo)];
    }
  }
  return detail::kNegInf;  // unreachable
}

const PassageSurface::Row& PassageSurface::checkpoint_at_or_below(std::int64_t level) const {
  assert(!checkpoints_.empty());
  auto it = std::upper_bound(
      checkpoints_.begin(), checkpoints_.end(), level,
      [](std::int64_t lv, const Row& row) { return lv < row.level; });
  assert(it != checkpoints_.begin());
  return *std::prev(it);
}

std::vector<PassageSurface::Row> PassageSurface::recompute_cone(std::int64_t ix,
                                                                std::int64_t iy) const {
  const std::int64_t d = ix + iy;
  // Seed strictly below d when possible so a backtrack always makes progress.
  const Row* seed = &checkpoint_at_or_below(d);
  if (seed->level == d && d > 0) {
    seed = &checkpoint_at_or_below(d - 1);
  }
  const std::int64_t d_seed = seed->level;

  // The ancestor cone of (ix, iy) is closed under in-box predecessors, so the
  // recursion restricted to it reproduces the true surface values.
  auto cone_xlo = [&](std::int64_t t) {
    return std::max({internal_xlo(t), ix - (d - t), t - iy});
  };
  auto cone_xhi = [&](std::int64_t t) { return std::min(internal_xhi(t), ix); };

  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(d - d_seed + 1));
  {
    const std::int64_t lo = cone_xlo(d_seed), hi = cone_xhi(d_seed);
    Row base{d_seed, lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1))};
    for (std::int64_t x = lo; x <= hi; ++x) {
      base.values[static_cast<std::size_t>(x - lo)] =
          seed->values[static_cast<std::size_t>(x - seed->xlo)];
    }
    rows.push_back(std::move(base));
  }
  for (std::int64_t t = d_seed + 1; t <= d; ++t) {
    const Row& prev = rows.back();
    const std::int64_t lo = cone_xlo(t), hi = cone_xhi(t);
    Row row{t, lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1))};
    for (std::int64_t x = lo; x <= hi; ++x) {
      const std::int64_t pl = x - 1 - prev.xlo;
      const std::int64_t pb = x - prev.xlo;
      const std::int64_t pn = static_cast<std::int64_t>(prev.values.size());
      const double left = (pl >= 0 && pl < pn) ? prev.values[static_cast<std::size_t>(pl)]
                                               : detail::kNegInf;
      const double below = (pb >= 0 && pb < pn) ? prev.values[static_cast<std::size_t>(pb)]
                                                : detail::kNegInf;
      row.values[static_cast<std::size_t>(x - lo)] =
          weight_fn_(x, t - x) + std::max(left, below);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lpplab
