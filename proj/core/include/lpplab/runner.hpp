#pragma once

#include <functional>
#include <span>
#include <string>

#include "lpplab/experiments.hpp"

namespace lpplab {

// Resolve the worker count: explicit config value, else LPP_LAB_THREADS,
// else hardware concurrency.
int resolve_workers(int configured);

// Sample indices are partitioned into contiguous chunks; workers own disjoint
// chunks and the on_chunk callback fires in chunk order, so every output is
// independent of the worker count.  Chunks below `start_chunk` must already
// be present in `rows` (resume).
struct RunProgress {
  std::function<void(std::int64_t chunk_index, std::int64_t chunks_total,
                     std::span<const Row> chunk_rows)>
      on_chunk;
};

void run_samples(const Experiment& exp, const ExperimentConfig& cfg,
                 std::int64_t start_chunk, std::vector<Row>& rows,
                 const RunProgress& progress);

// End-to-end: validate, sample (resuming an interrupted run when the manifest
// and raw file agree), write raw CSV + manifest + report JSON.
struct RunOutcome {
  ExperimentReport report;
  std::string raw_path;
  std::string report_path;
  std::string manifest_path;
};

RunOutcome run_experiment_to_files(ExperimentConfig cfg, bool log_progress = false);

// Recompute the report of a completed run from its raw CSV + manifest.
RunOutcome rebuild_report(const std::string& raw_csv_path);

}  // namespace lpplab
