#include "benjamin/harness/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "benjamin/errors.hpp"

namespace benjamin::harness {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(text.c_str(), &end);
  return errno == 0 && end == text.c_str() + text.size() && std::isfinite(out);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model.l", "model.p", "grid.n_points", "grid.length", "initial.type",
      "initial.amplitude", "initial.width", "initial.center", "initial.sigma0", "initial.s",
      "initial.c", "initial.tol", "initial.max_iter", "initial.path", "solver.dt",
      "solver.t_end", "solver.integrator", "solver.dealias", "solver.mollifier_n",
      "solver.mollifier_profile", "solver.snapshot_stride", "solver.cfl_guard",
      "solver.nonlinear", "diagnostics.sobolev_s", "diagnostics.gevrey",
      "diagnostics.bourgain", "diagnostics.radius_fit", "diagnostics.fit_k_lo",
      "diagnostics.fit_k_hi", "diagnostics.decay_t_lo", "diagnostics.epsilon",
      "diagnostics.exact", "diagnostics.audit_sigmas", "diagnostics.audit_theta",
      "diagnostics.audit_b", "diagnostics.audit_T", "output.spectra", "output.checkpoint",
      "output.plots", "seed"};
  return keys;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

KeyValueDocument KeyValueDocument::parse(std::string_view text, std::string origin) {
  KeyValueDocument doc;
  doc.origin_ = std::move(origin);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ConfigError(doc.origin_, line, "expected 'key = value', got '" + content + "'");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ConfigError(doc.origin_, line, "empty key");
    if (auto it = doc.entries_.find(key); it != doc.entries_.end())
      throw ConfigError(doc.origin_, line,
                        "duplicate key '" + key + "' (first set on line " +
                            std::to_string(it->second.line) + ")");
    doc.entries_[key] = Entry{value, line};
  }
  return doc;
}

KeyValueDocument KeyValueDocument::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot read file");
  std::ostringstream text;
  text << in.rdbuf();
  KeyValueDocument doc = parse(text.str(), path.string());
  doc.base_dir_ = path.parent_path();
  return doc;
}

const KeyValueDocument::Entry* KeyValueDocument::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void KeyValueDocument::set(const std::string& key, std::string value, int line) {
  entries_[key] = Entry{std::move(value), line};
}

void KeyValueDocument::fail(const std::string& key, const std::string& message) const {
  const Entry* e = find(key);
  throw ConfigError(origin_, e ? e->line : 0, key + ": " + message);
}

std::optional<double> KeyValueDocument::get_double(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  double v;
  if (!parse_double(e->value, v)) fail(key, "expected a finite number, got '" + e->value + "'");
  return v;
}

std::optional<long> KeyValueDocument::get_int(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(e->value.c_str(), &end, 10);
  if (errno != 0 || e->value.empty() || end != e->value.c_str() + e->value.size())
    fail(key, "expected an integer, got '" + e->value + "'");
  return v;
}

std::optional<bool> KeyValueDocument::get_bool(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  fail(key, "expected true or false, got '" + e->value + "'");
}

std::optional<std::string> KeyValueDocument::get_string(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  return e->value;
}

std::vector<double> KeyValueDocument::get_double_list(const std::string& key) const {
  std::vector<double> out;
  const Entry* e = find(key);
  if (!e) return out;
  for (const std::string& item : split(e->value, ',')) {
    double v;
    if (!parse_double(item, v)) fail(key, "expected a comma-separated list of numbers");
    out.push_back(v);
  }
  return out;
}

RadiusFitOptions RunConfig::radius_options() const {
  RadiusFitOptions opts;
  const Grid g = grid();
  opts.k_lo = diagnostics.fit_k_lo.value_or(g.k_max() / 4.0);
  opts.k_hi = diagnostics.fit_k_hi.value_or(
      std::min(2.0 * g.k_max() / 3.0, dealias_cutoff(g, model.p, solver.dealias)));
  return opts;
}

RunConfig parse_run_config(const KeyValueDocument& doc) {
  for (const auto& [key, entry] : doc.entries())
    if (!known_keys().count(key)) throw ConfigError(doc.origin(), entry.line, "unknown key '" + key + "'");

  RunConfig cfg;
  cfg.model.l = doc.get_double("model.l").value_or(cfg.model.l);
  cfg.model.p = static_cast<int>(doc.get_int("model.p").value_or(cfg.model.p));
  try {
    cfg.model.validate();
  } catch (const PreconditionError& e) {
    doc.fail(doc.has("model.l") && !(cfg.model.l >= 0 && cfg.model.l < 1) ? "model.l" : "model.p",
             e.what());
  }

  cfg.n_points = static_cast<int>(doc.get_int("grid.n_points").value_or(cfg.n_points));
  cfg.length = doc.get_double("grid.length").value_or(cfg.length);
  try {
    (void)cfg.grid();
  } catch (const PreconditionError& e) {
    doc.fail("grid.n_points", e.what());
  }
  const Grid grid = cfg.grid();

  // Initial data.
  InitialDataSpec& init = cfg.initial;
  if (auto type = doc.get_string("initial.type")) {
    if (*type == "gaussian") init.kind = InitialKind::gaussian;
    else if (*type == "gaussian_spectrum") init.kind = InitialKind::gaussian_spectrum;
    else if (*type == "sech") init.kind = InitialKind::sech;
    else if (*type == "soliton") init.kind = InitialKind::soliton;
    else if (*type == "file") init.kind = InitialKind::file;
    else doc.fail("initial.type", "unknown initial data family '" + *type + "'");
  }
  init.amplitude = doc.get_double("initial.amplitude").value_or(init.amplitude);
  init.width = doc.get_double("initial.width").value_or(init.width);
  init.center = doc.get_double("initial.center").value_or(init.center);
  init.sigma0 = doc.get_double("initial.sigma0").value_or(init.sigma0);
  init.s = doc.get_double("initial.s").value_or(init.s);
  init.c = doc.get_double("initial.c").value_or(init.c);
  init.tol = doc.get_double("initial.tol").value_or(init.tol);
  init.max_iter = static_cast<int>(doc.get_int("initial.max_iter").value_or(init.max_iter));
  if (!(init.width > 0)) doc.fail("initial.width", "must be > 0");
  if (init.kind == InitialKind::gaussian_spectrum) {
    if (!(init.sigma0 > 0)) doc.fail("initial.sigma0", "must be > 0");
    if (init.sigma0 * grid.k_max() > kExponentGuard)
      doc.fail("initial.sigma0", "sigma0*k_max exceeds the overflow guard");
  }
  if (init.kind == InitialKind::soliton) {
    if (!(init.c < -cfg.model.l * cfg.model.l / 4.0))
      doc.fail("initial.c", "soliton speed must satisfy c < -l^2/4");
    if (cfg.model.p % 2 == 0) doc.fail("initial.type", "no solitary wave for even p");
    if (!(init.tol > 0)) doc.fail("initial.tol", "must be > 0");
  }
  if (init.kind == InitialKind::file) {
    auto path = doc.get_string("initial.path");
    if (!path) throw ConfigError(doc.origin(), doc.find("initial.type")->line,
                                 "initial.type = file requires initial.path");
    init.path = std::filesystem::path(*path);
    if (init.path.is_relative()) init.path = doc.base_dir() / init.path;
    std::ifstream in(init.path);
    if (!in) doc.fail("initial.path", "cannot read '" + init.path.string() + "'");
    std::string token;
    int count = 0;
    while (in >> token) {
      double v;
      if (!parse_double(token, v))
        doc.fail("initial.path", "non-finite or malformed value '" + token + "' in data file");
      ++count;
    }
    if (count != cfg.n_points)
      doc.fail("initial.path", "data file holds " + std::to_string(count) +
                                   " values, grid.n_points = " + std::to_string(cfg.n_points));
  }

  // Solver.
  SolverConfig& solver = cfg.solver;
  solver.dt = doc.get_double("solver.dt").value_or(solver.dt);
  solver.t_end = doc.get_double("solver.t_end").value_or(solver.t_end);
  if (auto v = doc.get_string("solver.integrator")) {
    if (*v == "ifrk4") solver.integrator = Integrator::ifrk4;
    else if (*v == "etdrk4") solver.integrator = Integrator::etdrk4;
    else doc.fail("solver.integrator", "expected ifrk4 or etdrk4");
  }
  if (auto v = doc.get_string("solver.dealias")) {
    if (*v == "two_thirds") solver.dealias = Dealias::two_thirds;
    else if (*v == "none") solver.dealias = Dealias::none;
    else doc.fail("solver.dealias", "expected two_thirds or none");
  }
  if (auto n = doc.get_double("solver.mollifier_n")) {
    if (!(*n > 0)) doc.fail("solver.mollifier_n", "must be > 0");
    solver.mollifier = MollifierSpec{*n, RampProfile::linear};
  }
  if (auto v = doc.get_string("solver.mollifier_profile")) {
    if (!solver.mollifier) doc.fail("solver.mollifier_profile", "requires solver.mollifier_n");
    if (*v == "linear") solver.mollifier->profile = RampProfile::linear;
    else if (*v == "smooth") solver.mollifier->profile = RampProfile::smooth;
    else doc.fail("solver.mollifier_profile", "expected linear or smooth");
  }
  solver.snapshot_stride =
      static_cast<int>(doc.get_int("solver.snapshot_stride").value_or(solver.snapshot_stride));
  solver.cfl_guard = doc.get_double("solver.cfl_guard").value_or(solver.cfl_guard);
  solver.nonlinear = doc.get_bool("solver.nonlinear").value_or(solver.nonlinear);
  try {
    solver.validate();
  } catch (const PreconditionError& e) {
    const char* key = "solver.dt";
    if (solver.snapshot_stride < 1) key = "solver.snapshot_stride";
    else if (!(solver.cfl_guard > 0 && solver.cfl_guard <= 1)) key = "solver.cfl_guard";
    else if (doc.has("solver.t_end")) key = "solver.t_end";
    doc.fail(key, e.what());
  }

  // Diagnostics.
  DiagnosticsSpec& diag = cfg.diagnostics;
  const double k_max = grid.k_max();
  diag.sobolev_s = doc.get_double("diagnostics.sobolev_s").value_or(diag.sobolev_s);
  if (const auto* e = doc.find("diagnostics.gevrey")) {
    for (const std::string& item : split(e->value, ',')) {
      const auto parts = split(item, ':');
      double sigma, s;
      if (parts.size() != 2 || !parse_double(parts[0], sigma) || !parse_double(parts[1], s))
        doc.fail("diagnostics.gevrey", "expected entries 'sigma:s', got '" + item + "'");
      if (sigma < 0 || sigma * k_max > kExponentGuard)
        doc.fail("diagnostics.gevrey", "sigma = " + item + " outside [0, 700/k_max]");
      diag.gevrey.push_back({sigma, s});
    }
  }
  if (const auto* e = doc.find("diagnostics.bourgain")) {
    for (const std::string& item : split(e->value, ',')) {
      const auto parts = split(item, ':');
      double sigma, s, b;
      if (parts.size() != 3 || !parse_double(parts[0], sigma) || !parse_double(parts[1], s) ||
          !parse_double(parts[2], b))
        doc.fail("diagnostics.bourgain", "expected entries 'sigma:s:b', got '" + item + "'");
      if (sigma < 0 || sigma * k_max > kExponentGuard)
        doc.fail("diagnostics.bourgain", "sigma = " + item + " outside [0, 700/k_max]");
      diag.bourgain.push_back({sigma, s, b});
    }
    if (!diag.bourgain.empty() && solver.total_steps() < 3 * solver.snapshot_stride)
      doc.fail("diagnostics.bourgain", "needs at least three snapshots");
  }
  diag.radius_fit = doc.get_bool("diagnostics.radius_fit").value_or(diag.radius_fit);
  diag.fit_k_lo = doc.get_double("diagnostics.fit_k_lo");
  diag.fit_k_hi = doc.get_double("diagnostics.fit_k_hi");
  {
    const RadiusFitOptions opts = cfg.radius_options();
    if (!(*opts.k_lo > 0 && *opts.k_lo < *opts.k_hi))
      doc.fail(doc.has("diagnostics.fit_k_lo") ? "diagnostics.fit_k_lo" : "diagnostics.fit_k_hi",
               "radius fit band must satisfy 0 < k_lo < k_hi");
  }
  diag.decay_t_lo = doc.get_double("diagnostics.decay_t_lo").value_or(diag.decay_t_lo);
  if (diag.decay_t_lo < 1.0) doc.fail("diagnostics.decay_t_lo", "must be >= 1");
  diag.epsilon = doc.get_double("diagnostics.epsilon").value_or(diag.epsilon);
  if (!(diag.epsilon > 0)) doc.fail("diagnostics.epsilon", "must be > 0");
  diag.exact = doc.get_bool("diagnostics.exact").value_or(diag.exact);
  if (diag.exact) {
    const bool kdv_sech = init.kind == InitialKind::sech && cfg.model.l == 0.0 &&
                          cfg.model.p == 1 && init.amplitude < 0 &&
                          std::abs(init.width - 2.0 / std::sqrt(-init.amplitude / 3.0)) <=
                              1e-12 * init.width;
    if (!kdv_sech && init.kind != InitialKind::soliton)
      doc.fail("diagnostics.exact",
               "exact comparison needs soliton data, or sech data with l = 0, p = 1 and "
               "width = 2/sqrt(-amplitude/3)");
  }
  diag.audit_sigmas = doc.get_double_list("diagnostics.audit_sigmas");
  for (double sigma : diag.audit_sigmas)
    if (sigma < 0 || sigma * k_max > kExponentGuard)
      doc.fail("diagnostics.audit_sigmas", "sigma outside [0, 700/k_max]");
  diag.audit_theta = doc.get_double("diagnostics.audit_theta").value_or(diag.audit_theta);
  diag.audit_b = doc.get_double("diagnostics.audit_b").value_or(diag.audit_b);
  diag.audit_T = doc.get_double("diagnostics.audit_T");
  if (!diag.audit_sigmas.empty()) {
    if (cfg.model.p != 1) doc.fail("diagnostics.audit_sigmas", "the audit requires p = 1");
    if (!(diag.audit_theta > 0 && diag.audit_theta < 0.75))
      doc.fail("diagnostics.audit_theta", "must lie in (0, 3/4)");
    if (!(diag.audit_b > 0.5 && diag.audit_b < 1.0))
      doc.fail("diagnostics.audit_b", "must lie in (1/2, 1)");
  }

  cfg.output.spectra = doc.get_bool("output.spectra").value_or(cfg.output.spectra);
  cfg.output.checkpoint = doc.get_bool("output.checkpoint").value_or(cfg.output.checkpoint);
  cfg.output.plots = doc.get_bool("output.plots").value_or(cfg.output.plots);
  if (auto seed = doc.get_int("seed")) {
    if (*seed < 0) doc.fail("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(*seed);
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(KeyValueDocument::load(path));
}

const char* to_string(Integrator v) { return v == Integrator::ifrk4 ? "ifrk4" : "etdrk4"; }
const char* to_string(Dealias v) { return v == Dealias::two_thirds ? "two_thirds" : "none"; }
const char* to_string(InitialKind v) {
  switch (v) {
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::gaussian_spectrum: return "gaussian_spectrum";
    case InitialKind::sech: return "sech";
    case InitialKind::soliton: return "soliton";
    case InitialKind::file: return "file";
  }
  return "?";
}

std::string canonical_text(const RunConfig& cfg) {
  std::ostringstream out;
  out << "model.l=" << fmt(cfg.model.l) << "\nmodel.p=" << cfg.model.p
      << "\ngrid.n_points=" << cfg.n_points << "\ngrid.length=" << fmt(cfg.length);
  const InitialDataSpec& init = cfg.initial;
  out << "\ninitial.type=" << to_string(init.kind) << "\ninitial.amplitude=" << fmt(init.amplitude)
      << "\ninitial.width=" << fmt(init.width) << "\ninitial.center=" << fmt(init.center)
      << "\ninitial.sigma0=" << fmt(init.sigma0) << "\ninitial.s=" << fmt(init.s)
      << "\ninitial.c=" << fmt(init.c) << "\ninitial.tol=" << fmt(init.tol)
      << "\ninitial.max_iter=" << init.max_iter << "\ninitial.path=" << init.path.string();
  const SolverConfig& s = cfg.solver;
  out << "\nsolver.dt=" << fmt(s.dt) << "\nsolver.integrator=" << to_string(s.integrator)
      << "\nsolver.dealias=" << to_string(s.dealias)
      << "\nsolver.mollifier_n=" << (s.mollifier ? fmt(s.mollifier->n) : "none")
      << "\nsolver.mollifier_profile="
      << (s.mollifier ? (s.mollifier->profile == RampProfile::linear ? "linear" : "smooth") : "none")
      << "\nsolver.snapshot_stride=" << s.snapshot_stride << "\nsolver.cfl_guard=" << fmt(s.cfl_guard)
      << "\nsolver.nonlinear=" << s.nonlinear;
  const DiagnosticsSpec& d = cfg.diagnostics;
  out << "\ndiagnostics.sobolev_s=" << fmt(d.sobolev_s) << "\ndiagnostics.gevrey=";
  for (const auto& g : d.gevrey) out << fmt(g.sigma) << ":" << fmt(g.s) << ",";
  out << "\ndiagnostics.bourgain=";
  for (const auto& b : d.bourgain) out << fmt(b.sigma) << ":" << fmt(b.s) << ":" << fmt(b.b) << ",";
  const RadiusFitOptions opts = cfg.radius_options();
  out << "\ndiagnostics.radius_fit=" << d.radius_fit << "\ndiagnostics.fit_k_lo=" << fmt(*opts.k_lo)
      << "\ndiagnostics.fit_k_hi=" << fmt(*opts.k_hi) << "\ndiagnostics.exact=" << d.exact
      << "\nseed=" << cfg.seed << "\n";
  return out.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  // FNV-1a, 64 bit.
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_text(cfg)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace benjamin::harness
