#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "benjamin/diagnostics.hpp"
#include "benjamin/solver.hpp"

namespace benjamin::harness {

// Binary layout (native endianness):
//   "BNJCKPT\0", u32 version, u64 config hash,
//   i64 step_count, f64 t, i32 N, f64 L, i32 p, f64 l, N/2+1 complex coeffs,
//   RNG state (u64 length + text), u64 row count + rows,
//   u64 snapshot count + (f64 t, coeffs) per snapshot.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  std::uint64_t config_hash = 0;
  SolverState state;
  std::string rng_state;  // std::mt19937_64 textual state
  std::vector<DiagnosticsRow> rows;  // diagnostics cursor = rows.size()
  std::vector<double> snapshot_times;
  std::vector<SpectralField> snapshots;
};

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);

// Throws ConfigError on a bad magic, version, or truncated file.
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace benjamin::harness
