#include "ceeat/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace ceeat {

namespace {

struct RawValue {
    std::string text;
    int line = 0;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::map<std::string, RawValue> parse_pairs(const std::string& text) {
    std::map<std::string, RawValue> pairs;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = line;
        std::size_t hash = stripped.find('#');
        if (hash != std::string::npos) stripped = stripped.substr(0, hash);
        stripped = trim(stripped);
        if (stripped.empty()) continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + trim(line) + "'");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        if (pairs.count(key))
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        pairs[key] = {value, line_no};
    }
    return pairs;
}

double parse_double(const std::string& s, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + s + "' is not a number");
    }
    if (pos != s.size()) throw ConfigError("key '" + key + "': trailing characters in '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& key) {
    auto fn = [&](const std::string& name) -> std::optional<std::vector<double>> {
        if (s.rfind(name + "(", 0) != 0 || s.back() != ')') return std::nullopt;
        std::string inner = s.substr(name.size() + 1, s.size() - name.size() - 2);
        std::vector<std::string> parts;
        std::istringstream ss(inner);
        std::string part;
        while (std::getline(ss, part, ',')) parts.push_back(trim(part));
        if (parts.size() != 3)
            throw ConfigError("key '" + key + "': " + name + " needs (start, stop, count)");
        double a = parse_double(parts[0], key);
        double b = parse_double(parts[1], key);
        int n = static_cast<int>(parse_double(parts[2], key));
        if (n < 2) throw ConfigError("key '" + key + "': " + name + " count must be >= 2");
        std::vector<double> out(static_cast<std::size_t>(n));
        if (name == "linspace") {
            for (int i = 0; i < n; ++i) out[i] = a + (b - a) * double(i) / double(n - 1);
        } else {
            if (a <= 0.0 || b <= 0.0)
                throw ConfigError("key '" + key + "': logspace endpoints must be positive");
            double la = std::log10(a), lb = std::log10(b);
            for (int i = 0; i < n; ++i)
                out[i] = std::pow(10.0, la + (lb - la) * double(i) / double(n - 1));
        }
        return out;
    };
    if (auto v = fn("linspace")) return *v;
    if (auto v = fn("logspace")) return *v;
    std::vector<double> out;
    std::istringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(parse_double(trim(part), key));
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

// Tracks which keys were consumed so leftovers can be reported with the
// full list of accepted keys.
class Reader {
public:
    Reader(std::map<std::string, RawValue> pairs) : pairs_(std::move(pairs)) {}

    bool has(const std::string& key) {
        known_.insert(key);
        return pairs_.count(key) > 0;
    }

    std::string get_string(const std::string& key, const std::string& def) {
        known_.insert(key);
        auto it = pairs_.find(key);
        if (it == pairs_.end()) return def;
        consumed_.insert(key);
        return it->second.text;
    }

    double get_double(const std::string& key, double def) {
        known_.insert(key);
        auto it = pairs_.find(key);
        if (it == pairs_.end()) return def;
        consumed_.insert(key);
        return parse_double(it->second.text, key);
    }

    int get_int(const std::string& key, int def) {
        double v = get_double(key, def);
        if (v != std::floor(v)) throw ConfigError("key '" + key + "' must be an integer");
        return static_cast<int>(v);
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t def) {
        known_.insert(key);
        auto it = pairs_.find(key);
        if (it == pairs_.end()) return def;
        consumed_.insert(key);
        try {
            return std::stoull(it->second.text);
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "' must be a non-negative integer");
        }
    }

    std::vector<double> get_list(const std::string& key, std::vector<double> def = {}) {
        known_.insert(key);
        auto it = pairs_.find(key);
        if (it == pairs_.end()) return def;
        consumed_.insert(key);
        return parse_list(it->second.text, key);
    }

    std::vector<double> require_list(const std::string& key) {
        if (!has(key)) throw ConfigError("missing required key '" + key + "'");
        return get_list(key);
    }

    void finish() const {
        for (const auto& [key, raw] : pairs_) {
            if (consumed_.count(key)) continue;
            std::ostringstream msg;
            msg << "line " << raw.line << ": unknown key '" << key << "'; valid keys:";
            for (const auto& k : known_) msg << ' ' << k;
            throw ConfigError(msg.str());
        }
    }

private:
    std::map<std::string, RawValue> pairs_;
    std::set<std::string> known_;
    std::set<std::string> consumed_;
};

void require(bool ok, const std::string& precondition) {
    if (!ok) throw ConfigError("config violates precondition: " + precondition);
}

TrajectoryConfig read_traj(Reader& r) {
    TrajectoryConfig t;
    t.n_trajectories = r.get_int("n_traj", 200);
    t.t_final = r.get_double("t_final", 1.0);
    t.dt = r.get_double("dt", 0.0);
    require(t.n_trajectories >= 1, "n_traj >= 1");
    require(t.t_final > 0.0, "t_final > 0");
    require(t.dt >= 0.0, "dt >= 0 (0 selects the default rule)");
    return t;
}

std::string default_out_dir() {
    if (const char* env = std::getenv("CEEAT_OUT_DIR")) return env;
    return "out";
}

}  // namespace

const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> names = {"table1",      "example4site", "ladder",
                                                   "noise-sweep", "disorder-pr",  "anharmonic"};
    return names;
}

ExperimentConfig validate_config(const std::string& text, const std::string& experiment_hint) {
    Reader r(parse_pairs(text));

    ExperimentConfig cfg;
    cfg.experiment = r.get_string("experiment", experiment_hint);
    if (cfg.experiment.empty())
        throw ConfigError("no experiment given (config key 'experiment' or CLI argument)");
    if (!experiment_hint.empty() && cfg.experiment != experiment_hint)
        throw ConfigError("config experiment '" + cfg.experiment +
                          "' disagrees with requested '" + experiment_hint + "'");
    const auto& names = known_experiments();
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end()) {
        std::ostringstream msg;
        msg << "unknown experiment '" << cfg.experiment << "'; known:";
        for (const auto& n : names) msg << ' ' << n;
        throw ConfigError(msg.str());
    }

    cfg.seed = r.get_u64("seed", 1234);
    cfg.workers = r.get_int("workers", 0);
    require(cfg.workers >= 0, "workers >= 0 (0 = all available)");
    cfg.out_dir = r.get_string("out_dir", default_out_dir());

    if (cfg.experiment == "table1") {
        Table1Params p;
        p.spin_n_max = r.get_int("spin_n_max", 6);
        p.ho_n_max = r.get_int("ho_n_max", 4);
        p.ho_r_max = r.get_int("ho_r_max", 4);
        p.ho_dark_sum_max = r.get_int("ho_dark_sum_max", 2);
        p.tolerance = r.get_double("tolerance", 1e-9);
        require(p.spin_n_max >= 1 && p.spin_n_max <= 8, "1 <= spin_n_max <= 8");
        require(p.ho_n_max >= 1 && p.ho_n_max <= 6, "1 <= ho_n_max <= 6");
        require(p.ho_r_max >= 0, "ho_r_max >= 0");
        require(p.ho_dark_sum_max >= 0, "ho_dark_sum_max >= 0");
        require(p.tolerance > 0.0, "tolerance > 0");
        cfg.params = p;
    } else if (cfg.experiment == "example4site") {
        cfg.params = Example4SiteParams{};
    } else if (cfg.experiment == "ladder") {
        LadderParams p;
        std::string kind = r.get_string("kind", "spin");
        if (kind == "spin") p.kind = SiteKind::spin;
        else if (kind == "ho") p.kind = SiteKind::ho;
        else throw ConfigError("kind must be 'spin' or 'ho'");
        p.n_sites = r.get_int("n_sites", 4);
        require(p.n_sites >= 1, "n_sites >= 1");
        std::vector<double> levels = r.get_list("initial_levels", {});
        for (double v : levels) {
            require(v == std::floor(v) && v >= 1, "initial_levels are integers >= 1");
            p.initial_levels.push_back(static_cast<int>(v));
        }
        p.max_level = r.get_int("max_level", -1);
        if (p.kind == SiteKind::spin) {
            if (p.max_level < 0) p.max_level = p.n_sites;
            require(p.max_level <= p.n_sites, "max_level <= n_sites for spins");
            if (p.initial_levels.empty())
                for (int m = 1; m <= p.max_level; ++m) p.initial_levels.push_back(m);
        } else {
            if (p.initial_levels.empty())
                throw ConfigError("missing required key 'initial_levels' for HO ladders");
            int top = *std::max_element(p.initial_levels.begin(), p.initial_levels.end());
            if (p.max_level < 0) p.max_level = 4 * top;
            require(p.max_level >= top, "max_level >= max(initial_levels)");
        }
        for (int level : p.initial_levels)
            require(level <= p.max_level, "initial_levels within the ladder");
        p.t_final = r.get_double("t_final", 5.0);
        p.n_steps = r.get_int("n_steps", 500);
        require(p.t_final > 0.0, "t_final > 0");
        require(p.n_steps >= 1, "n_steps >= 1");
        cfg.params = p;
    } else if (cfg.experiment == "noise-sweep") {
        NoiseSweepParams p;
        std::string mode = r.get_string("mode", "v-vs-lambda");
        if (mode == "v-vs-lambda") p.mode = SweepMode::v_vs_lambda;
        else if (mode == "v-vs-inv-tau-c") p.mode = SweepMode::v_vs_inv_tau_c;
        else throw ConfigError("mode must be 'v-vs-lambda' or 'v-vs-inv-tau-c'");
        p.n_sites = r.get_int("n_sites", 4);
        require(p.n_sites >= 1, "n_sites >= 1");
        p.m0 = r.get_int("m0", p.n_sites / 2);
        require(p.m0 >= 0 && p.m0 <= p.n_sites, "0 <= m0 <= n_sites");
        p.v_grid = r.require_list("v_grid");
        for (double v : p.v_grid) require(v >= 0.0, "v_grid values >= 0");
        if (p.mode == SweepMode::v_vs_lambda) {
            p.axis2_grid = r.require_list("lambda_grid");
            for (double v : p.axis2_grid) require(v >= 0.0, "lambda_grid values >= 0");
            p.fixed_value = r.get_double("tau_c", 0.33);
            require(p.fixed_value > 0.0, "tau_c > 0");
        } else {
            p.axis2_grid = r.require_list("inv_tau_c_grid");
            for (double v : p.axis2_grid) require(v > 0.0, "inv_tau_c_grid values > 0");
            p.fixed_value = r.get_double("lambda", 5.0);
            require(p.fixed_value >= 0.0, "lambda >= 0");
        }
        p.traj = read_traj(r);
        cfg.params = p;
    } else if (cfg.experiment == "disorder-pr") {
        DisorderPrParams p;
        p.n_sites = r.get_int("n_sites", 4);
        p.n_excitations = r.get_int("n_excitations", 2);
        p.n_realizations = r.get_int("n_realizations", 100);
        require(p.n_sites >= 1, "n_sites >= 1");
        require(p.n_excitations >= 0 && p.n_excitations <= p.n_sites,
                "0 <= n_excitations <= n_sites");
        require(p.n_realizations >= 1, "n_realizations >= 1");
        p.v_grid = r.require_list("v_grid");
        p.lambda_grid = r.require_list("lambda_grid");
        for (double v : p.v_grid) require(v >= 0.0, "v_grid values >= 0");
        for (double v : p.lambda_grid) require(v >= 0.0, "lambda_grid values >= 0");
        cfg.params = p;
    } else if (cfg.experiment == "anharmonic") {
        AnharmonicParams p;
        p.n_sites = r.get_int("n_sites", 4);
        p.n_excitations = r.get_int("n_excitations", 2);
        require(p.n_sites >= 1, "n_sites >= 1");
        require(p.n_excitations >= 1, "n_excitations >= 1");
        p.u_grid = r.get_list("u_grid", {});
        if (p.u_grid.empty()) {
            p.u_grid.push_back(0.0);
            double la = std::log10(0.01), lb = std::log10(1e4);
            for (int i = 0; i < 25; ++i)
                p.u_grid.push_back(std::pow(10.0, la + (lb - la) * double(i) / 24.0));
        }
        for (double u : p.u_grid) require(u >= 0.0, "u_grid values >= 0");
        cfg.params = p;
    }

    r.finish();
    return cfg;
}

}  // namespace ceeat
