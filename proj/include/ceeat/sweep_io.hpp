#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ceeat/noise_lab.hpp"

namespace ceeat {

/// Columns: axis1, axis2, mean, stderr, n_traj. Units comment first.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

/// Sidecar describing the sweep: seeds, dt, t_final, fixed parameters,
/// axis names and values, code version.
nlohmann::json sweep_sidecar_json(const SweepResult& result);

/// Write-to-temporary plus rename, so readers never observe partial files.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);

}  // namespace ceeat
