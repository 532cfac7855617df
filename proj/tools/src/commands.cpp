#include "commands.hpp"

#include "helmstab/helmstab.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace helmstab::cli {

using nlohmann::json;

namespace {

std::string hash_comment(const RunContext& ctx) { return "config_hash=" + ctx.config.hash; }

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << bytes;
    if (!out) throw ConfigError("write failed for " + path.string());
}

template <typename Writer>
void write_csv(const std::filesystem::path& path, Writer&& writer) {
    std::ostringstream ss;
    writer(ss);
    write_file(path, ss.str());
}

}  // namespace

int run_forward(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    const auto omegas = cfg.omegas.grid();
    auto ds = boundary_data(cfg.medium, cfg.sources, omegas);
    if (cfg.noise.eps2_target > 0.0) ds = add_noise(ds, cfg.noise.eps2_target, cfg.noise.seeds.front());

    write_csv(ctx.out / "sources.csv", [&](std::ostream& os) { io::write_sources_csv(os, cfg.sources, hash_comment(ctx)); });
    write_csv(ctx.out / "dataset.csv", [&](std::ostream& os) { io::write_dataset_csv(os, ds, hash_comment(ctx)); });
    write_file(ctx.out / "dataset.json", io::dataset_json(ds, cfg.hash));
    std::cout << "forward: " << omegas.size() << " frequencies up to K = " << io::format_double(ds.K)
              << ", epsilon2 = " << io::format_double(ds.epsilon2) << '\n';
    return 0;
}

int run_crosscheck(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    if (!cfg.medium.homogeneous() || cfg.medium.c_p() != 1.0) {
        throw ConfigError("crosscheck needs a homogeneous unit-speed medium (c_p = c_n = 1); "
                          "no time-domain solver exists for layered media");
    }
    const auto omegas = cfg.omegas.grid();
    const auto td = trace_transform(solve_wave(cfg.medium, cfg.sources, cfg.wave), omegas);
    const auto fd = boundary_data(cfg.medium, cfg.sources, omegas);

    double num = 0.0, den = 0.0;
    std::ostringstream csv;
    csv << "# " << hash_comment(ctx) << '\n' << "omega,abs_err_minus,abs_err_plus,abs_fd_minus,abs_fd_plus\n";
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double em = std::abs(td.d_minus[i] - kSourceSign * fd.d_minus[i]);
        const double ep = std::abs(td.d_plus[i] - kSourceSign * fd.d_plus[i]);
        num += em * em + ep * ep;
        den += std::norm(fd.d_minus[i]) + std::norm(fd.d_plus[i]);
        csv << io::format_double(omegas[i]) << ',' << io::format_double(em) << ',' << io::format_double(ep) << ','
            << io::format_double(std::abs(fd.d_minus[i])) << ',' << io::format_double(std::abs(fd.d_plus[i])) << '\n';
    }
    const double mismatch = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    const bool pass = mismatch <= cfg.crosscheck_threshold;

    write_file(ctx.out / "crosscheck.csv", csv.str());
    const json j = {{"config_hash", cfg.hash},
                    {"relative_l2_mismatch", mismatch},
                    {"threshold", cfg.crosscheck_threshold},
                    {"pass", pass},
                    {"wave", {{"T", cfg.wave.T}, {"h", cfg.wave.h}, {"dt", cfg.wave.dt}}}};
    write_file(ctx.out / "crosscheck.json", j.dump(2) + "\n");
    std::cout << "crosscheck: relative mismatch " << io::format_double(mismatch) << (pass ? " <= " : " > ")
              << io::format_double(cfg.crosscheck_threshold) << '\n';
    return pass ? 0 : 1;
}

int run_invert(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    const auto omegas = cfg.omegas.grid();
    const auto clean = boundary_data(cfg.medium, cfg.sources, omegas);
    const TikhonovSolver solver(assemble(cfg.medium, cfg.sources.grid, omegas, cfg.sources.support_margin));

    auto emit = [&](const BoundaryDataset& ds, double noise_level, std::uint64_t seed, const std::string& stem) {
        const auto res = invert(solver, ds, noise_level, &cfg.sources, cfg.inversion);
        write_csv(ctx.out / (stem + ".csv"), [&](std::ostream& os) {
            io::write_reconstruction_csv(os, cfg.sources, res.recovered, hash_comment(ctx));
        });
        write_file(ctx.out / (stem + ".json"),
                   io::reconstruction_json(res, ds.noise_eps2, ds.K, cfg.medium.alpha(), seed, cfg.hash));
        std::cout << stem << ": lambda = " << io::format_double(res.lambda)
                  << ", rel_err_f0 = " << io::format_double(res.rel_err_f0.value_or(NAN))
                  << ", rel_err_f1 = " << io::format_double(res.rel_err_f1.value_or(NAN)) << '\n';
    };

    if (cfg.noise.eps2_target == 0.0) {
        emit(clean, 0.0, 0, "reconstruction");
        return 0;
    }
    for (const auto seed : cfg.noise.seeds) {
        const auto noisy = add_noise(clean, cfg.noise.eps2_target, seed);
        emit(noisy, std::sqrt(noisy.noise_eps2), seed, "reconstruction_seed" + std::to_string(seed));
    }
    return 0;
}

int run_sweep(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    SweepSpec spec;
    spec.c_p = cfg.medium.c_p();
    spec.c_n = cfg.medium.c_n();
    spec.truth = cfg.sources;
    spec.K_list = cfg.sweep.K_list;
    spec.alpha_list = cfg.sweep.alpha_list;
    spec.eps2_target = cfg.noise.eps2_target;
    spec.seeds = cfg.noise.seeds;
    spec.inversion = cfg.inversion;
    spec.validate();

    const auto reports = run_sweep(spec, ctx.jobs);
    const auto summary = summarize(spec, reports, cfg.sweep.jitter);
    write_csv(ctx.out / "sweep.csv", [&](std::ostream& os) { io::write_sweep_csv(os, reports, hash_comment(ctx)); });
    write_file(ctx.out / "sweep.json", io::sweep_manifest_json(spec, summary, cfg.hash));

    std::cout << "sweep: " << reports.size() << " cells, fitted constant "
              << io::format_double(summary.fitted_constant) << ", trends "
              << (summary.trends_hold() ? "hold" : "violated") << '\n';
    if (cfg.sweep.assert_trends && !summary.trends_hold()) return 1;
    return 0;
}

int run_bounds(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    const auto& b = cfg.bounds;
    const double alpha = b.alpha.value_or(cfg.medium.alpha());
    const auto& sp = cfg.sources;
    const double M = b.M.value_or(constant_M(sp));
    const double f0_0 = sobolev_norm(sp.f0, 0, sp.grid), f1_0 = sobolev_norm(sp.f1, 0, sp.grid);
    const double f0_2 = sobolev_norm(sp.f0, 2, sp.grid), f1_1 = sobolev_norm(sp.f1, 1, sp.grid);

    const auto thm = theorem_rhs_from_eps2(b.eps2, b.K, alpha, M);
    const double E = b.eps2 < 1.0 ? -std::log(std::sqrt(b.eps2)) : 0.0;
    const double ks = k_split(b.K, E);
    const json j = {{"config_hash", cfg.hash},
                    {"inputs", {{"K", b.K}, {"k", b.k}, {"k1", b.k1}, {"eps2", b.eps2}, {"alpha", alpha}, {"M", M}}},
                    {"E", E},
                    {"k_split", ks},
                    {"harmonic_measure_lb", harmonic_measure_lb(b.k, b.K)},
                    {"tail_bound", tail_bound(b.k, alpha, f0_2, f1_1)},
                    {"lemma21_bound", lemma21_bound(b.k, b.k1, alpha, f1_0, f0_0, cfg.medium.c_max())},
                    {"theorem_rhs", thm.value},
                    {"e_undefined", thm.e_undefined}};
    write_file(ctx.out / "bounds.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace helmstab::cli
