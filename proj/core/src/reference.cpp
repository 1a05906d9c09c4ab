#include "lpplab/reference.hpp"

#include <stdexcept>

namespace lpplab::reference {

TwoPassMoments two_pass_moments(const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("two_pass_moments: need >= 2 rows");
  const std::size_t dim = rows.front().size();
  TwoPassMoments out;
  out.mean.assign(dim, 0.0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < dim; ++i) out.mean[i] += r[i];
  }
  for (auto& m : out.mean) m /= static_cast<double>(rows.size());
  out.covariance.assign(dim, std::vector<double>(dim, 0.0));
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        out.covariance[i][j] += (r[i] - out.mean[i]) * (r[j] - out.mean[j]);
      }
    }
  }
  const double denom = static_cast<double>(rows.size() - 1);
  for (auto& row : out.covariance) {
    for (auto& c : row) c /= denom;
  }
  return out;
}

}  // namespace lpplab::reference
