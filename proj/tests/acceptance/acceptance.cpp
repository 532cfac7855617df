// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.
#include "helmstab/helmstab.hpp"

#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace helmstab;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

const MediumConfig kLayered(1.0, 1.5, 0.0);

WaveOptions wave_opts(double T) {
    WaveOptions o;
    o.T = T;
    o.h = 1.0 / 256;
    o.dt = 0.8 / 256;
    return o;
}

SweepSpec sweep_base(const std::vector<double>& K_list) {
    SweepSpec s;
    s.c_p = kLayered.c_p();
    s.c_n = kLayered.c_n();
    const double kmax = *std::max_element(K_list.begin(), K_list.end());
    s.truth = helmstab::testing::two_bump(SourceGrid::resolving(kmax * kLayered.c_max()));
    s.K_list = K_list;
    s.eps2_target = 1e-6;
    s.seeds = {1, 2, 3, 4, 5};
    return s;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (double x : v) out += (out.empty() ? "" : " ") + fmt("%.3g", x);
    return out;
}

Outcome homogeneous_reduction() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pos(-1.0, 1.0), freq(0.05, 30.0);
    double worst = 0.0;
    for (double c : {0.5, 1.0, 2.0}) {
        for (double alpha : {0.0, 1.0}) {
            const MediumConfig cfg(c, c, alpha);
            for (int s = 0; s < 1000; ++s) {
                const double x = pos(rng), y = pos(rng), w = freq(rng);
                const cplx kap = kappa_of(c * w, alpha).kappa;
                const cplx ref = cplx(0, 1) / (2.0 * kap) * std::exp(cplx(0, 1) * kap * std::abs(x - y));
                const cplx G = green(cfg, w, x, y);
                worst = std::max(worst, std::abs(G - ref) / std::abs(G));
            }
        }
    }
    return {worst <= 1e-12, fmt("max |G - free|/|G| = %.2e (tol 1e-12)", worst)};
}

Outcome interface_continuity() {
    const double below = std::nextafter(0.0, -1.0);
    double worst = 0.0;
    for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        const auto cfg = kLayered.with_alpha(alpha);
        for (int i = 0; i < 50; ++i) {
            const double y = -0.98 + 1.96 * i / 49.0;
            for (int k = 0; k < 50; ++k) {
                const double w = 0.1 + 29.9 * k / 49.0;
                worst = std::max(worst, std::abs(green(cfg, w, 0.0, y) - green(cfg, w, below, y)));
            }
        }
    }
    return {worst <= 1e-10, fmt("max |G(0+,y) - G(0-,y)| = %.2e (tol 1e-10)", worst)};
}

Outcome ode_residual() {
    const SourceGrid g(2049);
    const auto sp = helmstab::testing::two_bump(g);
    const double h = g.h();
    double worst = 0.0;
    for (double alpha : {0.0, 1.0}) {
        const auto cfg = kLayered.with_alpha(alpha);
        for (double w : {2.0, 5.0, 8.0}) {
            const auto lw = layer_wavenumbers(cfg, w);
            std::vector<cplx> u(g.n());
            std::vector<bool> need(g.n(), false);
            for (std::size_t j = 1; j + 1 < g.n(); ++j) {
                if (sp.f0[j] != 0.0 || sp.f1[j] != 0.0) need[j - 1] = need[j] = need[j + 1] = true;
            }
            for (std::size_t j = 0; j < g.n(); ++j) {
                if (need[j]) u[j] = forward_field(cfg, sp, w, g.x(j));
            }
            double num = 0.0, den = 0.0;
            for (std::size_t j = 1; j + 1 < g.n(); ++j) {
                if (sp.f0[j] == 0.0 && sp.f1[j] == 0.0) continue;
                const double x = g.x(j);
                const cplx kap = x >= 0.0 ? lw.pos.kappa : lw.neg.kappa;
                const cplx s = kSourceSign * source_density(cfg, w, x, sp.f0[j], sp.f1[j]);
                const cplx r = (u[j + 1] - 2.0 * u[j] + u[j - 1]) / (h * h) + kap * kap * u[j] - s;
                num += std::norm(r);
                den += std::norm(s);
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
    }
    return {worst <= 1e-3, fmt("max relative residual = %.2e (tol 1e-3, sign %+g)", worst, kSourceSign)};
}

Outcome crosscheck() {
    const SourceGrid g(2049);
    const auto sp = helmstab::testing::two_bump(g);
    std::vector<double> band;
    for (double w = 1.0; w <= 8.0 + 1e-12; w += 0.05) band.push_back(w);
    std::vector<double> errs;
    for (double alpha : {0.0, 0.5, 1.0}) {
        const MediumConfig cfg(1, 1, alpha);
        const auto td = trace_transform(solve_wave(cfg, sp, wave_opts(9.0)), band);
        const auto fd = boundary_data(cfg, sp, band);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < band.size(); ++i) {
            num += std::norm(td.d_minus[i] - kSourceSign * fd.d_minus[i]) +
                   std::norm(td.d_plus[i] - kSourceSign * fd.d_plus[i]);
            den += std::norm(fd.d_minus[i]) + std::norm(fd.d_plus[i]);
        }
        errs.push_back(std::sqrt(num / den));
    }
    const double worst = *std::max_element(errs.begin(), errs.end());
    return {worst <= 0.02, fmt("relative L2 mismatch at alpha 0/0.5/1 = %s (tol 0.02)", join(errs).c_str())};
}

Outcome parseval() {
    const SourceGrid g(2049);
    const auto sp = helmstab::testing::two_bump(g);
    const MediumConfig cfg(1, 1, 0.5);
    const auto ws = solve_wave(cfg, sp, wave_opts(30.0));
    const auto ps = parseval_sides(ws, boundary_data(cfg, sp, uniform_omegas_spacing(60.0, 0.01)));
    return {ps.relative_gap() <= 0.05, fmt("frequency side %.6g, time side %.6g, gap %.2e (tol 0.05)",
                                           ps.frequency_side, ps.time_side, ps.relative_gap())};
}

Outcome observability_trend() {
    const SourceGrid g(2049);
    const auto sp = helmstab::testing::two_bump(g);
    const std::vector<double> alphas{0.0, 1.0, 2.0};
    std::vector<double> ratios;
    for (double alpha : alphas) {
        ratios.push_back(observability_check(solve_wave(MediumConfig(1, 1, alpha), sp, wave_opts(9.0)), sp).ratio);
    }
    const auto fit = fit_gaussian_growth(alphas, ratios);
    return {fit.residual_factor <= 2.0,
            fmt("ratios %s, single-C fit C = %.3f, residual factor %.3f (tol 2)%s", join(ratios).c_str(), fit.C,
                fit.residual_factor, fit.envelope ? "" : ", fit is not an envelope")};
}

Outcome inversion_fidelity() {
    const auto cfg = kLayered.with_alpha(0.5);
    const SourceGrid g = SourceGrid::resolving(60.0 * cfg.c_max());
    const auto truth = helmstab::testing::two_bump(g);
    const auto clean = boundary_data(cfg, truth, uniform_omegas_spacing(60.0, inversion_omega_spacing(cfg)));
    const auto res = invert(cfg, g, add_noise(clean, 1e-8, 1), 1e-4, &truth);
    const bool ok = *res.rel_err_f0 <= 0.05 && *res.rel_err_f1 <= 0.05;
    return {ok, fmt("rel_err_f0 %.2e, rel_err_f1 %.2e (tol 0.05), lambda %.3g%s", *res.rel_err_f0, *res.rel_err_f1,
                    res.lambda, res.converged ? "" : ", discrepancy not met")};
}

Outcome trend_K() {
    auto s = sweep_base({5, 10, 20, 40});
    s.alpha_list = {1.0};
    const auto reps = run_sweep(s);
    std::vector<double> med;
    for (const auto& row : median_errors(s, reps)) med.push_back(row[0]);
    const auto v = non_increasing(med);
    return {v.holds, fmt("median err_l2 over K 5/10/20/40 = %s, worst step %.3f", join(med).c_str(), v.worst_step)};
}

Outcome trend_alpha() {
    auto s = sweep_base({20});
    s.alpha_list = {0, 1, 2, 4};
    const auto reps = run_sweep(s);
    const auto med = median_errors(s, reps)[0];
    const auto v = non_decreasing(med);
    return {v.holds, fmt("median err_l2 over alpha 0/1/2/4 = %s, worst step %.3f", join(med).c_str(), v.worst_step)};
}

Outcome dominance() {
    auto s = sweep_base({5, 10, 15, 20, 25, 30, 35, 40});
    s.alpha_list = {0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4};
    const auto c1 = summarize(s, run_sweep(s)).fitted_constant;
    s.seeds = {101, 102, 103, 104, 105};
    const auto c2 = summarize(s, run_sweep(s)).fitted_constant;
    const double spread = std::max(c1, c2) / std::min(c1, c2);
    const bool ok = std::isfinite(c1) && std::isfinite(c2) && c1 > 0 && c2 > 0 && spread <= 4.0;
    return {ok, fmt("fitted C = %.3e / %.3e over two seed sets, spread %.2f (tol 4)", c1, c2, spread)};
}

Outcome tail_scaling() {
    const auto cfg = kLayered.with_alpha(0.5);
    const SourceGrid g = SourceGrid::resolving(16.0 * 40.0 * cfg.c_max());
    const auto sp = helmstab::testing::two_bump(g);
    std::vector<double> consts, tails;
    for (double k : {10.0, 20.0, 40.0}) {
        const auto te = empirical_tail(cfg, sp, k);
        consts.push_back(te.constant());
        tails.push_back(te.tail);
    }
    const double spread = *std::max_element(consts.begin(), consts.end()) / *std::min_element(consts.begin(), consts.end());
    const double slope = std::log(tails[2] / tails[0]) / std::log(4.0);
    return {spread <= 2.0, fmt("fitted constants at k 10/20/40 = %s, spread %.1f (tol 2), tail ~ k^%.2f",
                               join(consts).c_str(), spread, slope)};
}

Outcome evaluators() {
    std::vector<std::string> bad;
    auto check = [&](const char* what, double got, double want) {
        if (!(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)))) bad.push_back(what);
    };
    check("harmonic_measure_lb(2K, K)", harmonic_measure_lb(20.0, 10.0), 1.0 / (std::numbers::pi * std::sqrt(15.0)));
    check("harmonic_measure_lb(K, K)", harmonic_measure_lb(10.0, 10.0), 0.5);
    check("k_split(2, 1e4)", k_split(2.0, 1e4), std::pow(2.0, 2.0 / 3.0) * 10.0);
    check("k_split small E", k_split(10.0, 1.0), 10.0);
    check("lemma21_bound zero norms", lemma21_bound(1.0, 1.0, 0.0, 0.0, 0.0, 1.0), 0.0);
    check("lemma21_bound e^16", lemma21_bound(1.0, 1.0, 0.0, 1.0, 0.0, 1.0), std::exp(16.0));
    check("theorem_rhs K=10", theorem_rhs(1e-8, 10.0, -std::log(1e-4), 0.0, 1.0).value, 0.110059024936969776);
    check("theorem_rhs eps2 -> 0, K -> inf", theorem_rhs_from_eps2(0.0, 1e9, 0.0, 1.0).value, 0.0);
    std::string detail = bad.empty() ? "all evaluator examples within 1e-12" : "mismatch:";
    for (const auto& b : bad) detail += " " + b;
    return {bad.empty(), detail};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "homogeneous reduction", 1.0, homogeneous_reduction},
        {2, "interface continuity", 1.0, interface_continuity},
        {3, "ODE residual", 10.0, ode_residual},
        {4, "frequency/time cross-check", 60.0, crosscheck},
        {5, "Parseval identity", 60.0, parseval},
        {6, "observability trend", 120.0, observability_trend},
        {7, "inversion fidelity", 60.0, inversion_fidelity},
        {8, "increasing stability in K", 300.0, trend_K},
        {9, "deterioration in alpha", 300.0, trend_alpha},
        {10, "single-constant dominance", 600.0, dominance},
        {11, "tail-bound scaling", 60.0, tail_scaling},
        {12, "bound evaluators", 1.0, evaluators},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool ok = out.ok && in_time;
        if (!ok) ++failed;
        std::printf("%s %2d %-28s %s; %.2f s (budget %g s)%s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    out.detail.c_str(), secs, c.budget_s, in_time ? "" : " OVER BUDGET");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
