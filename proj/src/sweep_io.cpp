#include "ceeat/sweep_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ceeat/errors.hpp"

namespace ceeat {

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "# energies in gamma0, times in 1/gamma0\n";
    out << "axis1,axis2,mean,stderr,n_traj\n";
    out.precision(17);
    for (std::size_t i = 0; i < result.axis1.size(); ++i) {
        for (std::size_t j = 0; j < result.axis2.size(); ++j) {
            out << result.axis1[i] << ',' << result.axis2[j] << ',' << result.mean_at(i, j)
                << ',' << result.stderr_at(i, j) << ',' << result.n_per_cell << '\n';
        }
    }
}

nlohmann::json sweep_sidecar_json(const SweepResult& result) {
    nlohmann::json j;
    j["experiment"] = result.meta.experiment;
    j["code_version"] = result.meta.code_version;
    j["base_seed"] = result.meta.base_seed;
    j["n_per_cell"] = result.n_per_cell;
    j["t_final"] = result.meta.t_final;
    j["dt"] = result.meta.dt;  // 0 means the per-cell default rule
    j["axis1"] = {{"name", result.meta.axis1_name}, {"values", result.axis1}};
    j["axis2"] = {{"name", result.meta.axis2_name}, {"values", result.axis2}};
    j["fixed"] = result.meta.fixed;
    return j;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvariantViolation("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw InvariantViolation("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::ostringstream s;
    s << std::hex;
    s.width(16);
    s.fill('0');
    s << fnv1a64(bytes);
    return s.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvariantViolation("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace ceeat
