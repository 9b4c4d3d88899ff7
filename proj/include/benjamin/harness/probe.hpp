#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace benjamin::harness {

struct ProbeSpec {
  long samples = 1000000;
  std::uint64_t seed = 0;
  double alpha_max = 50.0;  // |alpha|, |beta| <= alpha_max
  double sigma_max = 1.0;   // sigma in (0, sigma_max]
};

struct ProbePoint {
  double alpha = 0.0;
  double beta = 0.0;
  double sigma = 0.0;
  double theta = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs, 0 when both vanish
  double second_ratio = 0.0;  // min(|a|,|b|) / (<a><b>/<a+b>)
  bool holds = true;
  bool second_holds = true;
};

struct ProbeReport {
  long samples = 0;
  std::uint64_t seed = 0;
  long violations = 0;         // first inequality
  long second_violations = 0;  // min(|a|,|b|) <= <a><b>/<a+b>
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  ProbePoint worst;  // sample attaining max_ratio
  double second_max_ratio = 0.0;  // sup of min(|a|,|b|) <a+b> / (<a><b>)
};

// Evaluates one point of the exponential lemma.
ProbePoint probe_point(double alpha, double beta, double sigma, double theta);

// Monte Carlo sweep with std::mt19937_64 and a fixed 53-bit uniform mapping,
// so the sample sequence is identical on every platform.
ProbeReport run_probe(const ProbeSpec& spec);

nlohmann::ordered_json to_json(const ProbePoint& p);
nlohmann::ordered_json to_json(const ProbeReport& r);

}  // namespace benjamin::harness
