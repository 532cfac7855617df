#include "config.hpp"

#include "helmstab/greens.hpp"
#include "helmstab/io.hpp"
#include "helmstab/stability.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace helmstab::cli {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items()) {
        if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

template <typename T>
T get(const json& j, const char* key, const std::string& where, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

template <typename T>
T require(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
    return get<T>(j, key, where, T{});
}

std::vector<Bump> bumps(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected a list of bumps");
    std::vector<Bump> out;
    for (const auto& b : j) {
        only_keys(b, where, {"center", "width", "amplitude"});
        out.push_back({require<double>(b, "center", where), require<double>(b, "width", where),
                       get<double>(b, "amplitude", where, 1.0)});
    }
    return out;
}

}  // namespace

std::vector<double> OmegaSpec::grid() const {
    if (min) {
        std::vector<double> w(*count);
        for (std::size_t j = 0; j < *count; ++j) {
            w[j] = *min + (K - *min) * static_cast<double>(j) / static_cast<double>(*count - 1);
        }
        return w;
    }
    if (count) return uniform_omegas(K, *count);
    return uniform_omegas_spacing(K, *spacing);
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    only_keys(j, "config",
              {"medium", "grid", "sources", "omegas", "noise", "sweep", "bounds", "inversion", "wave", "crosscheck",
               "output"});

    ExperimentConfig cfg;
    cfg.raw = text;
    cfg.hash = io::fnv1a_hex(text);

    try {
        const json m = j.value("medium", json::object());
        only_keys(m, "medium", {"c_p", "c_n", "alpha"});
        cfg.medium = MediumConfig(get<double>(m, "c_p", "medium", 1.0), get<double>(m, "c_n", "medium", 1.0),
                                  get<double>(m, "alpha", "medium", 0.0));

        const json o = j.value("omegas", json::object());
        only_keys(o, "omegas", {"K", "count", "spacing", "min"});
        cfg.omegas.K = get<double>(o, "K", "omegas", 10.0);
        if (!(cfg.omegas.K > 1.0)) throw ConfigError("omegas.K must exceed 1");
        if (o.contains("count") && o.contains("spacing")) throw ConfigError("omegas: give count or spacing, not both");
        if (o.contains("min")) {
            cfg.omegas.min = get<double>(o, "min", "omegas", 0.0);
            if (!(*cfg.omegas.min > 0.0 && *cfg.omegas.min < cfg.omegas.K) || !o.contains("count")) {
                throw ConfigError("omegas.min must lie in (0, K) and needs omegas.count");
            }
        }
        if (o.contains("count")) {
            const auto c = get<long long>(o, "count", "omegas", 0);
            if (c < 2) throw ConfigError("omegas.count must be at least 2");
            cfg.omegas.count = static_cast<std::size_t>(c);
        } else {
            cfg.omegas.spacing = get<double>(o, "spacing", "omegas", inversion_omega_spacing(cfg.medium));
            if (!(*cfg.omegas.spacing > 0.0)) throw ConfigError("omegas.spacing must be positive");
        }

        const json g = j.value("grid", json::object());
        only_keys(g, "grid", {"n"});
        const json s = j.value("sources", json::object());
        only_keys(s, "sources", {"f0", "f1", "csv", "margin"});
        const double margin = get<double>(s, "margin", "sources", SourcePair::kDefaultMargin);
        if (s.contains("csv")) {
            if (s.contains("f0") || s.contains("f1")) throw ConfigError("sources: csv and bump lists are exclusive");
            auto p = std::filesystem::path(require<std::string>(s, "csv", "sources"));
            if (p.is_relative()) p = base_dir / p;
            try {
                cfg.sources = io::read_sources_csv(p, margin);
            } catch (const std::exception& e) {
                throw ConfigError(e.what());
            }
            if (g.contains("n") && get<long long>(g, "n", "grid", 0) != static_cast<long long>(cfg.sources.grid.n())) {
                throw ConfigError("grid.n does not match the sources csv");
            }
        } else {
            double k_top = cfg.omegas.K;
            const json swp = j.value("sweep", json::object());
            if (swp.is_object() && swp.contains("K_list")) {
                for (double K : get<std::vector<double>>(swp, "K_list", "sweep", {})) k_top = std::max(k_top, K);
            }
            const auto n_default = SourceGrid::resolving(cfg.medium.c_max() * k_top).n();
            const auto n = get<long long>(g, "n", "grid", static_cast<long long>(n_default));
            if (n < 0) throw ConfigError("grid.n must be positive");
            const SourceGrid grid(static_cast<std::size_t>(n));
            cfg.sources = make_bump_pair(grid, bumps(s.value("f0", json::array()), "sources.f0"),
                                         bumps(s.value("f1", json::array()), "sources.f1"), margin);
        }

        const json nz = j.value("noise", json::object());
        only_keys(nz, "noise", {"eps2_target", "seeds"});
        cfg.noise.eps2_target = get<double>(nz, "eps2_target", "noise", 0.0);
        if (cfg.noise.eps2_target < 0.0 || cfg.noise.eps2_target >= 1.0) {
            throw ConfigError("noise.eps2_target must lie in [0, 1)");
        }
        cfg.noise.seeds = get<std::vector<std::uint64_t>>(nz, "seeds", "noise", {1});
        if (cfg.noise.seeds.empty()) throw ConfigError("noise.seeds is empty");

        const json sw = j.value("sweep", json::object());
        only_keys(sw, "sweep", {"K_list", "alpha_list", "jitter", "assert_trends"});
        cfg.sweep.K_list = get<std::vector<double>>(sw, "K_list", "sweep", {});
        cfg.sweep.alpha_list = get<std::vector<double>>(sw, "alpha_list", "sweep", {cfg.medium.alpha()});
        cfg.sweep.jitter = get<double>(sw, "jitter", "sweep", 0.05);
        cfg.sweep.assert_trends = get<bool>(sw, "assert_trends", "sweep", false);

        const json b = j.value("bounds", json::object());
        only_keys(b, "bounds", {"K", "k", "k1", "eps2", "alpha", "M"});
        cfg.bounds.K = get<double>(b, "K", "bounds", cfg.omegas.K);
        cfg.bounds.k = get<double>(b, "k", "bounds", 2.0 * cfg.bounds.K);
        cfg.bounds.k1 = get<double>(b, "k1", "bounds", 0.0);
        cfg.bounds.eps2 = get<double>(b, "eps2", "bounds", 1e-8);
        if (!(cfg.bounds.K > 0.0) || !(cfg.bounds.k > 0.0) || cfg.bounds.k1 < 0.0 || !(cfg.bounds.eps2 > 0.0)) {
            throw ConfigError("bounds: K, k and eps2 must be positive, k1 non-negative");
        }
        if (b.contains("alpha")) cfg.bounds.alpha = get<double>(b, "alpha", "bounds", 0.0);
        if (b.contains("M")) cfg.bounds.M = get<double>(b, "M", "bounds", 1.0);

        const json inv = j.value("inversion", json::object());
        only_keys(inv, "inversion",
                  {"lambda_min_factor", "lambda_max_factor", "noiseless_factor", "max_bisections",
                   "discrepancy_tolerance"});
        auto& io = cfg.inversion;
        io.lambda_min_factor = get<double>(inv, "lambda_min_factor", "inversion", io.lambda_min_factor);
        io.lambda_max_factor = get<double>(inv, "lambda_max_factor", "inversion", io.lambda_max_factor);
        io.noiseless_factor = get<double>(inv, "noiseless_factor", "inversion", io.noiseless_factor);
        io.max_bisections = get<int>(inv, "max_bisections", "inversion", io.max_bisections);
        io.discrepancy_tolerance = get<double>(inv, "discrepancy_tolerance", "inversion", io.discrepancy_tolerance);
        io.validate();

        const json w = j.value("wave", json::object());
        only_keys(w, "wave", {"T", "h", "dt"});
        cfg.wave.T = get<double>(w, "T", "wave", 9.0);
        cfg.wave.h = get<double>(w, "h", "wave", 1.0 / 256);
        cfg.wave.dt = get<double>(w, "dt", "wave", 0.8 * cfg.wave.h);

        const json cc = j.value("crosscheck", json::object());
        only_keys(cc, "crosscheck", {"threshold"});
        cfg.crosscheck_threshold = get<double>(cc, "threshold", "crosscheck", 0.02);

        cfg.output = get<std::string>(j, "output", "config", "out");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

}  // namespace helmstab::cli
