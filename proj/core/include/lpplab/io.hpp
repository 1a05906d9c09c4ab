#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lpplab/experiments.hpp"

namespace lpplab {

// Shortest text that round-trips any double exactly.
std::string format_double17(double v);

// FNV-1a over a string, hex-encoded.
std::string fnv1a_hex(std::string_view text);

// Canonical JSON echo (sorted keys).  The hash excludes `workers` and
// `out_path`, which do not affect the sampled data.
std::string config_to_json(const ExperimentConfig& cfg);
std::string config_hash(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);  // throws ConfigError
ExperimentConfig load_config_file(const std::string& path);

std::string report_to_json(const ExperimentReport& report);

struct RawTable {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

// CSV: header `sample_index,<columns...>`, one row per sample in index order,
// comma-separated, \n line endings, floats with 17 significant digits.
class RawCsvWriter {
 public:
  RawCsvWriter(const std::string& path, std::span<const std::string> columns,
               bool truncate);
  void append_rows(std::int64_t first_index, std::span<const Row> rows);
  void flush();

 private:
  std::string path_;
  int fd_ = -1;
};

RawTable read_raw_csv(const std::string& path);

struct RunManifest {
  std::string library_version;
  std::string experiment;
  std::string config_json;
  std::string config_hash;
  std::int64_t samples = 0;
  std::int64_t chunk = 0;
  std::int64_t chunks_total = 0;
  std::int64_t chunks_done = 0;
  bool complete = false;
  double wall_time_s = 0;
  std::string raw_path;
  std::string report_path;
  std::string started_utc;
  std::string finished_utc;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);
bool file_exists(const std::string& path);
std::string utc_now_string();

}  // namespace lpplab
