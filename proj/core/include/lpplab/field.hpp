#pragma once

#include <bit>
#include <cstdint>
#include <concepts>

namespace lpplab {

// Lattice site in the nonnegative quadrant of Z^2.
struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  // Anti-diagonal level; every up/right path crosses each level once.
  std::int64_t level() const { return x + y; }

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

// Coordinate-wise partial order u <= v.
inline bool precedes(const LatticePoint& u, const LatticePoint& v) {
  return u.x <= v.x && u.y <= v.y;
}

namespace detail {

inline constexpr std::uint64_t kGammaX = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kGammaY = 0xC2B2AE3D27D4EB4FULL;

// Stafford mix13 finalizer followed by the murmur3 finalizer.  Two full
// avalanche rounds keep structured (x, y, sample) counters statistically
// clean; cheaper than a cryptographic hash by an order of magnitude.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
  z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
  return z ^ (z >> 33);
}

// Natural log for arguments in (0, 1], accurate to ~1 ulp.  Fixed polynomial
// (the classic Remez coefficients on [sqrt(2)/2, sqrt(2))) so that weights
// are bit-identical on any platform, independent of the host libm.
inline double portable_log(double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  // Shift v into [sqrt(2)/2, sqrt(2)): pick exponent k so m = v * 2^-k lands there.
  std::int64_t hx = static_cast<std::int64_t>(bits >> 32);
  std::int64_t k = 0;
  hx += 0x3FF00000 - 0x3FE6A09E;
  k = (hx >> 20) - 0x3FF;
  hx = (hx & 0x000FFFFF) + 0x3FE6A09E;
  const std::uint64_t mbits =
      (static_cast<std::uint64_t>(hx) << 32) | (bits & 0xFFFFFFFFULL);
  const double m = std::bit_cast<double>(mbits);

  const double f = m - 1.0;
  const double s = f / (2.0 + f);
  const double z = s * s;
  const double w = z * z;
  const double t1 = w * (3.999999999940941908e-01 +
                         w * (2.222219843214978396e-01 +
                              w * 1.531383769920937332e-01));
  const double t2 = z * (6.666666666666735130e-01 +
                         w * (2.857142874366239149e-01 +
                              w * (1.818357216161805012e-01 +
                                   w * 1.479819860511658591e-01)));
  const double r = t1 + t2;
  const double hfsq = 0.5 * f * f;
  const double dk = static_cast<double>(k);
  const double ln2_hi = 6.93147180369123816490e-01;
  const double ln2_lo = 1.90821492927058770002e-10;
  return dk * ln2_hi - ((hfsq - (s * (hfsq + r) + dk * ln2_lo)) - f);
}

}  // namespace detail

// Immutable random environment of i.i.d. Exp(1) vertex weights.  Weights are
// a pure function of (master_seed, sample_index, x, y): any sub-region is
// computable on demand and the field is safe to query from any thread.
class WeightField {
 public:
  WeightField(std::uint64_t master_seed, LatticePoint extent,
              std::uint64_t sample_index = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t sample_index() const { return sample_index_; }
  LatticePoint extent() const { return extent_; }

  // Same seed and extent, independent environment.
  WeightField fork_sample(std::uint64_t new_index) const;

  // Exp(1) weight at p; throws std::out_of_range outside the extent.
  double weight(LatticePoint p) const;

  // Unchecked fast path for sweep kernels that validated their box up front.
  double weight_at(std::int64_t x, std::int64_t y) const {
    const std::uint64_t h = detail::mix64(
        key_ + static_cast<std::uint64_t>(x) * detail::kGammaX +
        static_cast<std::uint64_t>(y) * detail::kGammaY);
    // 53-bit uniform in [0,1); u = 1 unreachable by construction.  The
    // u = 0 cell (probability 2^-53) maps to the smallest positive weight so
    // weights stay strictly positive.
    const std::uint64_t u53 = h >> 11;
    if (u53 == 0) return 0x1p-54;
    const double v = 1.0 - static_cast<double>(u53) * 0x1p-53;  // exact
    return -detail::portable_log(v);
  }

  friend bool operator==(const WeightField&, const WeightField&) = default;

 private:
  std::uint64_t master_seed_;
  std::uint64_t sample_index_;
  LatticePoint extent_;
  std::uint64_t key_;  // derived stream key, cached
};

template <class S>
concept WeightSource = requires(const S& s, std::int64_t x, std::int64_t y) {
  { s.weight_at(x, y) } -> std::convertible_to<double>;
};

}  // namespace lpplab
