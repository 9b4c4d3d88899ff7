#include "benjamin/harness/probe.hpp"

#include <algorithm>
#include <random>

#include "benjamin/errors.hpp"
#include "benjamin/operators.hpp"

namespace benjamin::harness {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

ProbePoint probe_point(double alpha, double beta, double sigma, double theta) {
  const ExpLemmaSample s = exp_lemma_probe(alpha, beta, sigma, theta);
  ProbePoint p{alpha, beta, sigma, theta, s.lhs, s.rhs, 0.0, 0.0, s.holds, s.second_holds};
  if (s.rhs > 0.0) p.ratio = s.lhs / s.rhs;
  p.second_ratio = s.min_abs / s.bracket_bound;
  return p;
}

ProbeReport run_probe(const ProbeSpec& spec) {
  if (spec.samples < 1) throw PreconditionError("probe: sample count must be >= 1");
  if (!(spec.alpha_max > 0.0 && spec.sigma_max > 0.0))
    throw PreconditionError("probe: alpha_max and sigma_max must be > 0");
  std::mt19937_64 rng(spec.seed);
  ProbeReport report;
  report.samples = spec.samples;
  report.seed = spec.seed;
  double sum = 0.0;
  for (long i = 0; i < spec.samples; ++i) {
    const double alpha = spec.alpha_max * (2.0 * uniform01(rng) - 1.0);
    const double beta = spec.alpha_max * (2.0 * uniform01(rng) - 1.0);
    const double sigma = spec.sigma_max * (1.0 - uniform01(rng));
    const double theta = uniform01(rng);
    const ProbePoint p = probe_point(alpha, beta, sigma, theta);
    if (!p.holds) ++report.violations;
    if (!p.second_holds) ++report.second_violations;
    sum += p.ratio;
    report.second_max_ratio = std::max(report.second_max_ratio, p.second_ratio);
    if (i == 0 || p.ratio > report.max_ratio) {
      report.max_ratio = p.ratio;
      report.worst = p;
    }
  }
  report.mean_ratio = sum / static_cast<double>(spec.samples);
  return report;
}

nlohmann::ordered_json to_json(const ProbePoint& p) {
  return {{"alpha", p.alpha}, {"beta", p.beta},   {"sigma", p.sigma},
          {"theta", p.theta}, {"lhs", p.lhs},     {"rhs", p.rhs},
          {"ratio", p.ratio}, {"second_ratio", p.second_ratio},
          {"holds", p.holds}, {"second_holds", p.second_holds}};
}

nlohmann::ordered_json to_json(const ProbeReport& r) {
  return {{"samples", r.samples},
          {"seed", r.seed},
          {"violations", r.violations},
          {"second_violations", r.second_violations},
          {"mean_ratio", r.mean_ratio},
          {"max_ratio", r.max_ratio},
          {"second_max_ratio", r.second_max_ratio},
          {"worst", to_json(r.worst)}};
}

}  // namespace benjamin::harness
