#include "benjamin/harness/checkpoint.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <optional>

#include "benjamin/errors.hpp"

namespace benjamin::harness {

namespace {

constexpr std::array<char, 8> kMagic = {'B', 'N', 'J', 'C', 'K', 'P', 'T', '\0'};

class Writer {
 public:
  explicit Writer(std::ofstream& out) : out_(out) {}
  template <class T>
  void put(const T& v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof v);
  }
  void put_string(const std::string& s) {
    put<std::uint64_t>(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void put_coeffs(const SpectralField& f) {
    for (int m = 0; m < f.modes(); ++m) {
      put(f[m].real());
      put(f[m].imag());
    }
  }
  void put_optional(const std::optional<double>& v) {
    put<std::uint8_t>(v ? 1 : 0);
    put(v.value_or(0.0));
  }

 private:
  std::ofstream& out_;
};

class Reader {
 public:
  Reader(std::ifstream& in, std::string origin) : in_(in), origin_(std::move(origin)) {}
  template <class T>
  T get() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in_) throw ConfigError(origin_, 0, "truncated checkpoint");
    return v;
  }
  std::string get_string() {
    const auto n = get<std::uint64_t>();
    if (n > (1u << 20)) throw ConfigError(origin_, 0, "corrupt checkpoint string");
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    if (!in_) throw ConfigError(origin_, 0, "truncated checkpoint");
    return s;
  }
  SpectralField get_coeffs(const Grid& grid) {
    SpectralField f(grid);
    for (int m = 0; m < f.modes(); ++m) {
      const double re = get<double>();
      const double im = get<double>();
      f[m] = Complex(re, im);
    }
    return f;
  }
  std::optional<double> get_optional() {
    const auto flag = get<std::uint8_t>();
    const double v = get<double>();
    return flag ? std::optional<double>(v) : std::nullopt;
  }
  std::uint64_t get_count(std::uint64_t limit) {
    const auto n = get<std::uint64_t>();
    if (n > limit) throw ConfigError(origin_, 0, "corrupt checkpoint count");
    return n;
  }

 private:
  std::ifstream& in_;
  std::string origin_;
};

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  Writer w(out);
  out.write(kMagic.data(), kMagic.size());
  w.put(Checkpoint::kVersion);
  w.put(ck.config_hash);
  const Grid& grid = ck.state.u_hat.grid();
  w.put<std::int64_t>(ck.state.step_count);
  w.put(ck.state.t);
  w.put<std::int32_t>(grid.size());
  w.put(grid.length());
  w.put<std::int32_t>(ck.state.params.p);
  w.put(ck.state.params.l);
  w.put_coeffs(ck.state.u_hat);
  w.put_string(ck.rng_state);
  w.put<std::uint64_t>(ck.rows.size());
  for (const DiagnosticsRow& row : ck.rows) {
    w.put(row.t);
    w.put(row.mass);
    w.put(row.energy);
    w.put(row.sobolev);
    w.put<std::uint64_t>(row.gevrey.size());
    for (double g : row.gevrey) w.put(g);
    w.put_optional(row.sigma_fit);
    w.put_optional(row.sigma_r);
    w.put_optional(row.sigma_resid);
  }
  w.put<std::uint64_t>(ck.snapshots.size());
  for (std::size_t i = 0; i < ck.snapshots.size(); ++i) {
    w.put(ck.snapshot_times[i]);
    w.put_coeffs(ck.snapshots[i]);
  }
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  const std::string origin = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(origin, 0, "cannot read checkpoint");
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw ConfigError(origin, 0, "not a checkpoint (bad magic)");
  Reader r(in, origin);
  const auto version = r.get<std::uint32_t>();
  if (version != Checkpoint::kVersion)
    throw ConfigError(origin, 0, "unsupported checkpoint version " + std::to_string(version));

  const auto hash = r.get<std::uint64_t>();
  const auto step = r.get<std::int64_t>();
  const double t = r.get<double>();
  const auto n = r.get<std::int32_t>();
  const double length = r.get<double>();
  ModelParams params;
  params.p = r.get<std::int32_t>();
  params.l = r.get<double>();
  std::optional<Grid> grid;
  try {
    grid.emplace(n, length);
  } catch (const PreconditionError&) {
    throw ConfigError(origin, 0, "corrupt checkpoint grid");
  }
  SolverState state{t, r.get_coeffs(*grid), step, params};
  Checkpoint ck{hash, std::move(state), r.get_string(), {}, {}, {}};
  const auto rows = r.get_count(1u << 28);
  ck.rows.reserve(rows);
  for (std::uint64_t i = 0; i < rows; ++i) {
    DiagnosticsRow row;
    row.t = r.get<double>();
    row.mass = r.get<double>();
    row.energy = r.get<double>();
    row.sobolev = r.get<double>();
    const auto ng = r.get_count(1u << 16);
    for (std::uint64_t g = 0; g < ng; ++g) row.gevrey.push_back(r.get<double>());
    row.sigma_fit = r.get_optional();
    row.sigma_r = r.get_optional();
    row.sigma_resid = r.get_optional();
    ck.rows.push_back(std::move(row));
  }
  const auto snaps = r.get_count(1u << 28);
  for (std::uint64_t i = 0; i < snaps; ++i) {
    ck.snapshot_times.push_back(r.get<double>());
    ck.snapshots.push_back(r.get_coeffs(*grid));
  }
  return ck;
}

}  // namespace benjamin::harness
