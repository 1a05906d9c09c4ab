#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpplab/stats.hpp"

namespace lpplab {

// One document per experiment; unknown fields are rejected at parse time and
// grids must be strictly increasing.  Regime thresholds are desk-scale
// stand-ins for the paper's asymptotic regimes and are part of the config so
// they can be tightened (or relaxed) without touching code.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t master_seed = 20260811;
  std::int64_t samples = 0;
  int workers = 0;  // 0: LPP_LAB_THREADS env var, else hardware concurrency
  std::int64_t chunk = 64;
  std::string out_path;  // output prefix; empty = ./<experiment>

  std::int64_t n = 0;
  std::int64_t r = 0;
  std::int64_t s = 0;
  double theta = 1.0;
  int sources = 16;
  bool corner_only = false;
  std::vector<std::int64_t> r_grid;
  std::vector<std::int64_t> nr_grid;  // corr_close: gaps n - r
  std::vector<std::int64_t> s_grid;
  std::vector<std::int64_t> n_grid;
  std::vector<std::int64_t> ks_pair;  // moddev: two n values for the KS check
  std::vector<double> theta_grid;
  std::vector<double> h_grid;
  std::vector<double> t_grid;
  std::vector<double> k_grid;

  double regime_r_frac = 0.25;  // corr experiments: max grid value <= frac * n
  double regime_s_frac = 0.3;   // profile_fluct: max s <= frac * n^{2/3}

  // Per-experiment slope targets / tolerances / tail bounds; validation fills
  // the defaults for keys the document omits.
  std::map<std::string, double> tolerances;
};

struct GridPoint {
  std::string name;
  double x = 0;
  double estimate = 0;
  double std_error = 0;
};

struct ReportCheck {
  std::string name;
  bool pass = true;
  bool advisory = false;  // reported but excluded from the overall pass flag
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  std::string library_version;
  std::string config_json;  // canonical echo
  std::string config_hash;
  std::int64_t samples = 0;
  double wall_time_s = 0;
  std::vector<std::string> columns;
  std::vector<GridPoint> grid;
  std::optional<ExponentFit> fit;
  std::vector<ReportCheck> checks;
  bool pass = false;
  std::string raw_path;
};

using Row = std::vector<double>;

class Experiment {
 public:
  virtual ~Experiment() = default;
  virtual std::string name() const = 0;
  virtual std::string schema() const = 0;
  // Fills tolerance defaults and enforces regime constraints; throws
  // ConfigError with a "regime violation: ..." message where applicable.
  virtual void validate(ExperimentConfig& cfg) const = 0;
  virtual std::vector<std::string> columns(const ExperimentConfig& cfg) const = 0;
  // Pure function of (config, sample index); safe to call concurrently.
  virtual Row sample(const ExperimentConfig& cfg, std::int64_t index) const = 0;
  virtual ExperimentReport analyze(const ExperimentConfig& cfg,
                                   const std::vector<Row>& rows) const = 0;
};

const Experiment& find_experiment(const std::string& name);  // throws ConfigError
std::vector<const Experiment*> all_experiments();

}  // namespace lpplab
