#include "lpplab/field.hpp"

#include <stdexcept>
#include <string>

namespace lpplab {

namespace {

std::uint64_t derive_key(std::uint64_t master_seed, std::uint64_t sample_index) {
  const std::uint64_t base = detail::mix64(master_seed + detail::kGammaX);
  return detail::mix64(base ^ (sample_index * detail::kGammaY + detail::kGammaX));
}

}  // namespace

WeightField::WeightField(std::uint64_t master_seed, LatticePoint extent,
                         std::uint64_t sample_index)
    : master_seed_(master_seed),
      sample_index_(sample_index),
      extent_(extent),
      key_(derive_key(master_seed, sample_index)) {
  if (extent.x < 0 || extent.y < 0) {
    throw std::invalid_argument("WeightField: extent must be nonnegative");
  }
}

WeightField WeightField::fork_sample(std::uint64_t new_index) const {
  return WeightField(master_seed_, extent_, new_index);
}

double WeightField::weight(LatticePoint p) const {
  if (p.x < 0 || p.y < 0 || p.x > extent_.x || p.y > extent_.y) {
    throw std::out_of_range("WeightField::weight: point (" + std::to_string(p.x) +
                            "," + std::to_string(p.y) + ") outside extent (" +
                            std::to_string(extent_.x) + "," +
                            std::to_string(extent_.y) + ")");
  }
  return weight_at(p.x, p.y);
}

}  // namespace lpplab
