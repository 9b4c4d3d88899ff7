#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "benjamin/analyticity.hpp"
#include "benjamin/bourgain.hpp"
#include "benjamin/operators.hpp"
#include "benjamin/solver.hpp"

namespace benjamin::harness {

// Flat `key = value` document. Lines are trimmed; `#` starts a comment;
// keys are dotted (`model.l`). Every entry remembers its source line so
// errors can point at it.
class KeyValueDocument {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static KeyValueDocument parse(std::string_view text, std::string origin);
  static KeyValueDocument load(const std::filesystem::path& path);

  const std::string& origin() const { return origin_; }
  // Directory relative paths inside the document resolve against.
  const std::filesystem::path& base_dir() const { return base_dir_; }
  const std::map<std::string, Entry>& entries() const { return entries_; }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const Entry* find(const std::string& key) const;
  void set(const std::string& key, std::string value, int line = 0);

  // Typed accessors; throw ConfigError anchored at the entry's line.
  std::optional<double> get_double(const std::string& key) const;
  std::optional<long> get_int(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;
  std::optional<std::string> get_string(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  std::string origin_;
  std::filesystem::path base_dir_;
  std::map<std::string, Entry> entries_;
};

enum class InitialKind { gaussian, gaussian_spectrum, sech, soliton, file };

struct InitialDataSpec {
  InitialKind kind = InitialKind::gaussian;
  double amplitude = 1.0;
  double width = 1.5;
  double center = 0.0;
  double sigma0 = 1.0;  // gaussian_spectrum: u_hat = A <k>^{-s} e^{-sigma0 |k|}
  double s = 0.0;
  double c = -1.0;  // soliton speed
  double tol = 1e-12;
  int max_iter = 500;
  std::filesystem::path path;
};

struct DiagnosticsSpec {
  double sobolev_s = 1.0;
  std::vector<GevreyIndex> gevrey;
  std::vector<BourgainIndex> bourgain;
  bool radius_fit = true;
  std::optional<double> fit_k_lo;
  std::optional<double> fit_k_hi;
  double decay_t_lo = 1.0;
  double epsilon = 0.01;
  bool exact = false;
  std::vector<double> audit_sigmas;
  double audit_theta = 0.5;
  double audit_b = 0.6;
  std::optional<double> audit_T;
};

struct OutputSpec {
  bool spectra = false;
  bool checkpoint = true;
  bool plots = true;
};

struct RunConfig {
  ModelParams model;
  int n_points = 512;
  double length = 80.0;
  InitialDataSpec initial;
  SolverConfig solver;
  DiagnosticsSpec diagnostics;
  OutputSpec output;
  std::uint64_t seed = 0;

  Grid grid() const { return Grid(n_points, length); }
  RadiusFitOptions radius_options() const;
};

// Parses and validates (including overflow guards and file-data shape).
RunConfig parse_run_config(const KeyValueDocument& doc);
RunConfig load_run_config(const std::filesystem::path& path);

// Canonical text of every setting that shapes the trajectory and the rows.
// solver.t_end and output.* are excluded so a run can be continued to a
// later horizon from its checkpoint.
std::string canonical_text(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

const char* to_string(Integrator v);
const char* to_string(Dealias v);
const char* to_string(InitialKind v);

}  // namespace benjamin::harness
