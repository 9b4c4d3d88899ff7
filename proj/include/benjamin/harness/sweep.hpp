#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "benjamin/harness/config.hpp"
#include "benjamin/harness/experiment.hpp"

namespace benjamin::harness {

// Study file (same key = value grammar):
//   study.base          = run config, relative to the study file
//   study.vary.<key>    = v1, v2, ...   (cartesian product over all vary keys)
//   study.sigmas        = audit sigma list        -> diagnostics.audit_sigmas
//   study.theta, study.b, study.audit_T          -> diagnostics.audit_*
//   study.T             = T list; members run to max T, the decay law is fitted
//                         over [min T, max T] and sigma(T) is tabulated
//   study.epsilon       -> diagnostics.epsilon
struct StudySpec {
  KeyValueDocument base;
  std::vector<std::pair<std::string, std::vector<std::string>>> vary;
  std::vector<double> sigmas;
  std::optional<double> theta, b, audit_T, epsilon;
  std::vector<double> T;
};

StudySpec load_study(const std::filesystem::path& path);

struct MemberResult {
  int index = 0;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::string status;  // ok, config_error, numerical_error
  std::string error;
  Json summary;
  std::vector<std::pair<double, double>> sigma_at_T;  // (T, running-min sigma)
};

struct SweepResult {
  std::vector<MemberResult> members;
  int exit_code = 0;  // 0 all ok, 2 some member config error, 3 otherwise failed
};

// Member documents: base with the member's overrides applied (and seed when given).
std::vector<KeyValueDocument> study_members(const StudySpec& spec,
                                            std::optional<std::uint64_t> seed = std::nullopt);

// Runs members on `jobs` worker threads into out_dir/member_NNN and writes
// sweep_summary.csv/.json, audit.csv, lower_bound.csv and sigma_T.csv.
SweepResult run_sweep(const StudySpec& spec, const std::filesystem::path& out_dir, int jobs,
                      std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace benjamin::harness
