#pragma once

#include <stdexcept>
#include <string>

namespace lpplab {

// A box would exceed the full-grid memory budget; callers should switch to
// the wavefront or checkpointed mode.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Endpoints violate the partial order or fall outside an admissible region.
struct AdmissibilityError : std::invalid_argument {
  explicit AdmissibilityError(const std::string& what) : std::invalid_argument(what) {}
};

// A statistic is undefined for the accumulated data (zero variance, too few
// observations).
struct DegenerateDataError : std::runtime_error {
  explicit DegenerateDataError(const std::string& what) : std::runtime_error(what) {}
};

// Experiment configuration failed validation.
struct ConfigError : std::invalid_argument {
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace lpplab
