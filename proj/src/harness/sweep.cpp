#include "benjamin/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "benjamin/errors.hpp"
#include "benjamin/harness/table_io.hpp"

namespace fs = std::filesystem;

namespace benjamin::harness {

namespace {

std::string member_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "member_%03d", index);
  return buf;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_double(xs[i]);
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(item.substr(a, item.find_last_not_of(" \t") - a + 1));
  }
  return out;
}

// Running minimum of sigma_fit at the last row with t <= T, read back from
// the member's table.
std::vector<std::pair<double, double>> sigma_at(const fs::path& table, const std::vector<double>& Ts) {
  std::vector<std::pair<double, double>> out;
  if (Ts.empty() || !fs::exists(table)) return out;
  std::istringstream in(read_text_file(table));
  std::string line;
  std::getline(in, line);
  const auto header = split_list(line);
  const auto col = std::find(header.begin(), header.end(), "sigma_fit") - header.begin();
  std::vector<std::pair<double, double>> series;
  double running = std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    const auto cells = split_list(line);
    if (static_cast<std::ptrdiff_t>(cells.size()) <= col) continue;
    const double sigma = std::strtod(cells[col].c_str(), nullptr);
    if (std::isfinite(sigma)) running = std::min(running, sigma);
    series.emplace_back(std::strtod(cells[0].c_str(), nullptr), running);
  }
  for (double T : Ts) {
    double value = std::numeric_limits<double>::quiet_NaN();
    for (const auto& [t, s] : series)
      if (t <= T * (1.0 + 1e-12)) value = s;
    out.emplace_back(T, value);
  }
  return out;
}

std::string opt_number(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number()) return "nan";
  return format_double(j[key].get<double>());
}

}  // namespace

StudySpec load_study(const fs::path& path) {
  const KeyValueDocument doc = KeyValueDocument::load(path);
  StudySpec spec;
  for (const auto& [key, entry] : doc.entries()) {
    if (key.rfind("study.vary.", 0) == 0) {
      const std::string target = key.substr(11);
      auto values = split_list(entry.value);
      if (values.empty()) doc.fail(key, "empty value list");
      spec.vary.emplace_back(target, std::move(values));
    } else if (key != "study.base" && key != "study.sigmas" && key != "study.theta" &&
               key != "study.b" && key != "study.audit_T" && key != "study.T" &&
               key != "study.epsilon") {
      throw ConfigError(doc.origin(), entry.line, "unknown study key '" + key + "'");
    }
  }
  const auto base = doc.get_string("study.base");
  if (!base) throw ConfigError(doc.origin(), 0, "study.base is required");
  fs::path base_path(*base);
  if (base_path.is_relative()) base_path = doc.base_dir() / base_path;
  if (!fs::exists(base_path)) doc.fail("study.base", "cannot read '" + base_path.string() + "'");
  spec.base = KeyValueDocument::load(base_path);
  spec.sigmas = doc.get_double_list("study.sigmas");
  spec.theta = doc.get_double("study.theta");
  spec.b = doc.get_double("study.b");
  spec.audit_T = doc.get_double("study.audit_T");
  spec.epsilon = doc.get_double("study.epsilon");
  spec.T = doc.get_double_list("study.T");
  for (double T : spec.T)
    if (!(T >= 1.0)) doc.fail("study.T", "every T must be >= 1");
  return spec;
}

std::vector<KeyValueDocument> study_members(const StudySpec& spec, std::optional<std::uint64_t> seed) {
  KeyValueDocument common = spec.base;
  if (!spec.sigmas.empty()) common.set("diagnostics.audit_sigmas", join_numbers(spec.sigmas));
  if (spec.theta) common.set("diagnostics.audit_theta", format_double(*spec.theta));
  if (spec.b) common.set("diagnostics.audit_b", format_double(*spec.b));
  if (spec.audit_T) common.set("diagnostics.audit_T", format_double(*spec.audit_T));
  if (spec.epsilon) common.set("diagnostics.epsilon", format_double(*spec.epsilon));
  if (!spec.T.empty()) {
    common.set("solver.t_end", format_double(*std::max_element(spec.T.begin(), spec.T.end())));
    common.set("diagnostics.decay_t_lo", format_double(*std::min_element(spec.T.begin(), spec.T.end())));
  }
  if (seed) common.set("seed", std::to_string(*seed));

  std::vector<KeyValueDocument> members{common};
  for (const auto& [key, values] : spec.vary) {
    std::vector<KeyValueDocument> next;
    for (const KeyValueDocument& doc : members)
      for (const std::string& v : values) {
        KeyValueDocument d = doc;
        d.set(key, v);
        next.push_back(std::move(d));
      }
    members = std::move(next);
  }
  return members;
}

SweepResult run_sweep(const StudySpec& spec, const fs::path& out_dir, int jobs,
                      std::optional<std::uint64_t> seed) {
  if (jobs < 1) throw PreconditionError("sweep: jobs must be >= 1");
  fs::create_directories(out_dir);
  const std::vector<KeyValueDocument> docs = study_members(spec, seed);

  SweepResult result;
  result.members.resize(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    MemberResult& m = result.members[i];
    m.index = static_cast<int>(i);
    for (const auto& [key, values] : spec.vary) m.overrides.emplace_back(key, docs[i].find(key)->value);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      MemberResult& m = result.members[i];
      const fs::path dir = out_dir / member_name(m.index);
      try {
        fs::create_directories(dir);
        const RunConfig cfg = parse_run_config(docs[i]);
        write_text_file(dir / "config.txt", canonical_text(cfg));
        m.summary = run_experiment(cfg, dir);
        m.status = "ok";
      } catch (const ConfigError& e) {
        m.status = "config_error";
        m.error = e.what();
      } catch (const PreconditionError& e) {
        m.status = "config_error";
        m.error = e.what();
      } catch (const std::exception& e) {
        m.status = "numerical_error";
        m.error = e.what();
      }
      m.sigma_at_T = sigma_at(dir / "timeseries.csv", spec.T);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(jobs, static_cast<int>(docs.size()));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  // Aggregation (single-threaded, member order).
  Json all = Json::array();
  std::string csv = "member,status";
  for (const auto& [key, values] : spec.vary) csv += "," + key;
  csv += ",mass_drift,energy_drift,sigma_final,decay_status,gamma,gamma_bound,verdict,theta_fit,error\n";
  std::string audit = "member,sigma,delta,bourgain,ratio\n";
  std::string lower = "member";
  for (const auto& [key, values] : spec.vary) lower += "," + key;
  lower += ",p,status,gamma,gamma_bound,tolerance,verdict\n";
  std::string sigma_T = "member,T,sigma\n";
  bool any_config = false, any_numerical = false;

  for (const MemberResult& m : result.members) {
    const std::string name = member_name(m.index);
    Json entry{{"member", name}, {"status", m.status}};
    Json ov = Json::object();
    for (const auto& [k, v] : m.overrides) ov[k] = v;
    entry["overrides"] = ov;
    if (!m.error.empty()) entry["error"] = m.error;
    entry["summary"] = m.summary;
    all.push_back(entry);
    any_config |= m.status == "config_error";
    any_numerical |= m.status == "numerical_error";

    const Json& s = m.summary;
    const Json drift = s.is_object() ? s.value("drift", Json::object()) : Json::object();
    const Json law = s.is_object() ? s.value("decay_law", Json::object()) : Json::object();
    const Json radius = s.is_object() ? s.value("radius", Json::object()) : Json::object();
    const Json fit = radius.value("final_fit", Json());
    const Json aud = s.is_object() ? s.value("audit", Json::object()) : Json::object();

    csv += name + "," + m.status;
    for (const auto& [k, v] : m.overrides) csv += "," + v;
    std::string err = m.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    csv += "," + opt_number(drift, "mass_rel") + "," + opt_number(drift, "energy_rel") + "," +
           opt_number(fit, "sigma") + "," + law.value("status", std::string("none")) + "," +
           opt_number(law, "gamma") + "," + opt_number(law, "gamma_bound") + "," +
           law.value("verdict", std::string("none")) + "," + opt_number(aud, "theta_fit") + "," +
           err + "\n";

    if (aud.contains("rows")) {
      for (const Json& row : aud["rows"])
        audit += name + "," + opt_number(row, "sigma") + "," + opt_number(row, "delta") + "," +
                 opt_number(row, "bourgain") + "," + opt_number(row, "ratio") + "\n";
      audit += name + ",theta_fit," + opt_number(aud, "theta_fit") + ",,\n";
    }
    if (law.contains("verdict")) {
      lower += name;
      for (const auto& [k, v] : m.overrides) lower += "," + v;
      lower += "," + std::to_string(s["model"]["p"].get<int>()) + "," +
               law["status"].get<std::string>() + "," + opt_number(law, "gamma") + "," +
               opt_number(law, "gamma_bound") + "," + opt_number(law, "tolerance") + "," +
               law["verdict"].get<std::string>() + "\n";
    }
    for (const auto& [T, sigma] : m.sigma_at_T)
      sigma_T += name + "," + format_double(T) + "," + format_double(sigma) + "\n";
  }

  write_text_file(out_dir / "sweep_summary.json", Json{{"members", all}}.dump(2) + "\n");
  write_text_file(out_dir / "sweep_summary.csv", csv);
  if (!spec.sigmas.empty()) write_text_file(out_dir / "audit.csv", audit);
  if (lower.find('\n') != lower.size() - 1) write_text_file(out_dir / "lower_bound.csv", lower);
  if (!spec.T.empty()) write_text_file(out_dir / "sigma_T.csv", sigma_T);

  result.exit_code = any_config ? 2 : any_numerical ? 3 : 0;
  return result;
}

}  // namespace benjamin::harness
