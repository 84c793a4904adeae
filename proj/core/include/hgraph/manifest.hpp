#pragma once

#include <string>
#include <vector>

#include "hgraph/grid.hpp"

namespace hgraph {

/// Reproducible run record.  The verdict section is byte-identical for the
/// same config and seed (timings live outside it); records append to
/// <dir>/manifest.json, one JSON array per run directory.
class RunManifest {
 public:
  RunManifest(std::string command, std::string config_echo);

  void set_grid(const GridDomain& dom);
  void set_seed(std::uint64_t seed);
  void add_tolerance(const std::string& name, double value);
  void add_value(const std::string& name, double value);
  void add_note(const std::string& name, const std::string& text);
  void add_verdict(const std::string& name, bool pass, const std::string& detail = "");
  void add_timing(const std::string& name, double seconds);
  void set_eps0(double eps0);

  bool all_verdicts_pass() const;

  /// Serialized single-run record (pretty JSON).
  std::string to_json() const;
  /// The deterministic part only (config echo, conventions, tolerances,
  /// values, verdicts).
  std::string verdict_section_json() const;

  /// Appends this record to dir/manifest.json (creating the directory and an
  /// empty array as needed).
  void append_to(const std::string& dir) const;

 private:
  std::string command_;
  std::string config_echo_;
  std::string grid_;
  std::uint64_t seed_ = 0;
  bool has_seed_ = false;
  double eps0_ = 0.0;
  bool has_eps0_ = false;
  std::vector<std::pair<std::string, double>> tolerances_;
  std::vector<std::pair<std::string, double>> values_;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::vector<std::tuple<std::string, bool, std::string>> verdicts_;
  std::vector<std::pair<std::string, double>> timings_;
};

}  // namespace hgraph
