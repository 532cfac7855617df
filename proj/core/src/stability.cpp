#include "helmstab/stability.hpp"

#include "helmstab/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace helmstab {

IValues I_functionals(const BoundaryDataset& ds, double k) {
    if (ds.omegas.empty()) return {};
    const double last = ds.omegas.back();
    if (k > last * (1.0 + 1e-12)) {
        throw std::out_of_range("I_functionals: k=" + std::to_string(k) + " lies beyond the data grid (max " +
                                std::to_string(last) + ")");
    }
    IValues out;
    for (std::size_t i = 1; i < ds.omegas.size(); ++i) {
        const double a = ds.omegas[i - 1];
        if (a >= k) break;
        const double b = std::min(ds.omegas[i], k);
        const double t = (b - a) / (ds.omegas[i] - a);
        const double m0 = std::norm(ds.d_minus[i - 1]);
        const double p0 = std::norm(ds.d_plus[i - 1]);
        const double m1 = m0 + t * (std::norm(ds.d_minus[i]) - m0);
        const double p1 = p0 + t * (std::norm(ds.d_plus[i]) - p0);
        out.I1 += 0.5 * (b - a) * (m0 + m1);
        out.I2 += 0.5 * (b - a) * (p0 + p1);
    }
    return out;
}

double lemma21_bound(double k_modulus, double k1, double alpha, double norm_f1_0, double norm_f0_0,
                     double c_max) {
    const double k = k_modulus;
    const double growth = std::exp(4.0 * c_max * (4.0 * k1 + alpha));
    return (k * norm_f1_0 * norm_f1_0 + (k * alpha * alpha + k * k * k / 3.0) * norm_f0_0 * norm_f0_0) * growth;
}

double harmonic_measure_lb(double k, double K) {
    if (!(k > 0.0) || !(K > 0.0)) throw std::invalid_argument("harmonic_measure_lb: k and K must be positive");
    if (k <= std::pow(2.0, 0.25) * K) return 0.5;
    const double q = k / K;
    return 1.0 / (std::numbers::pi * std::sqrt(q * q * q * q - 1.0));
}

double tail_bound(double k, double alpha, double norm_f0_2, double norm_f1_1) {
    if (!(k > 0.0)) throw std::invalid_argument("tail_bound: k must be positive");
    return ((1.0 + alpha * alpha) * norm_f0_2 * norm_f0_2 + norm_f1_1 * norm_f1_1) / k;
}

double k_split(double K, double E) {
    if (!(K > 1.0)) throw std::invalid_argument("k_split: K must exceed 1");
    if (!(E > 0.0)) throw std::invalid_argument("k_split: E must be positive");
    const double e14 = std::pow(E, 0.25);
    if (std::pow(2.0, 0.25) * std::cbrt(K) < e14) return std::pow(K, 2.0 / 3.0) * e14;
    return K;
}

TheoremRhs theorem_rhs(double eps2, double K, double E, double alpha, double M) {
    if (!(K > 1.0)) throw std::invalid_argument("theorem_rhs: K must exceed 1");
    TheoremRhs out;
    if (eps2 >= 1.0) {
        out.e_undefined = true;
        E = 0.0;
    }
    const double a2 = alpha * alpha;
    const double tail = std::isinf(E) ? 0.0 : (a2 + 1.0) * M * M / (std::pow(K, 2.0 / 3.0) * std::pow(E, 0.25) + 1.0);
    out.value = std::exp(a2) * (eps2 + tail);
    return out;
}

TheoremRhs theorem_rhs_from_eps2(double eps2, double K, double alpha, double M) {
    if (eps2 >= 1.0) return theorem_rhs(eps2, K, 0.0, alpha, M);
    const double E = eps2 > 0.0 ? -0.5 * std::log(eps2) : std::numeric_limits<double>::infinity();
    return theorem_rhs(eps2, K, E, alpha, M);
}

double inversion_omega_spacing(const MediumConfig& cfg) { return std::numbers::pi / (4.0 * cfg.c_max()); }

TailEstimate empirical_tail(const MediumConfig& cfg, const SourcePair& sp, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("empirical_tail: k must be positive");
    // The integrand oscillates in omega with period >= 2 pi / (4 c_max).
    const double spacing = 0.05 / cfg.c_max();
    const auto count = static_cast<std::size_t>(std::ceil(15.0 * k / spacing));
    std::vector<double> omegas(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        omegas[i] = k + 15.0 * k * static_cast<double>(i) / static_cast<double>(count);
    }
    const auto ds = boundary_data(cfg, sp, omegas);

    TailEstimate out;
    const auto upto = [&](double top) {
        std::vector<double> w, f;
        for (std::size_t i = 0; i < omegas.size() && omegas[i] <= top * (1.0 + 1e-12); ++i) {
            w.push_back(omegas[i]);
            f.push_back(std::norm(ds.d_minus[i]) + std::norm(ds.d_plus[i]));
        }
        return trapezoid<double>(w, f);
    };
    out.tail = upto(8.0 * k);
    out.tail_long = upto(16.0 * k);
    out.bound = tail_bound(k, cfg.alpha(), sobolev_norm(sp.f0, 2, sp.grid), sobolev_norm(sp.f1, 1, sp.grid));
    return out;
}

void SweepSpec::validate() const {
    if (K_list.empty()) throw std::invalid_argument("sweep: K list is empty");
    if (alpha_list.empty()) throw std::invalid_argument("sweep: alpha list is empty");
    if (seeds.empty()) throw std::invalid_argument("sweep: no seeds");
    for (double K : K_list) {
        if (!(K > 1.0)) throw std::invalid_argument("sweep: every K must exceed 1 (got " + std::to_string(K) + ")");
    }
    for (double a : alpha_list) {
        if (!(a >= 0.0)) throw std::invalid_argument("sweep: alpha must be >= 0");
    }
    if (!(eps2_target > 0.0) || !(eps2_target < 1.0)) throw std::invalid_argument("sweep: eps2 target must lie in (0, 1)");
    inversion.validate();
    truth.validate();
    const MediumConfig probe(c_p, c_n, 0.0);
    const double k_max = probe.c_max() * *std::max_element(K_list.begin(), K_list.end());
    const double needed = 2.0 * std::numbers::pi / (20.0 * k_max);
    if (truth.grid.h() > needed * (1.0 + 1e-12)) {
        throw std::invalid_argument("sweep: source grid h=" + std::to_string(truth.grid.h()) +
                                    " does not resolve 20 nodes per wavelength at c_max K (need h <= " +
                                    std::to_string(needed) + ")");
    }
}

namespace {

std::vector<StabilityReport> run_cell(const SweepSpec& spec, double K, double alpha) {
    const MediumConfig cfg(spec.c_p, spec.c_n, alpha);
    const auto& truth = spec.truth;
    const double spacing = inversion_omega_spacing(cfg);
    const auto omegas = uniform_omegas_spacing(K, spacing);
    const auto clean = boundary_data(cfg, truth, omegas);
    const TikhonovSolver solver(assemble(cfg, truth.grid, omegas, truth.support_margin));

    const double eps2 = spec.eps2_target;
    const double E = -0.5 * std::log(eps2);
    const double ks = k_split(K, E);
    const auto extended = ks > K ? boundary_data(cfg, truth, uniform_omegas_spacing(ks, spacing)) : clean;
    const auto iv = I_functionals(extended, std::min(ks, extended.omegas.back()));

    const double n_f0_0 = sobolev_norm(truth.f0, 0, truth.grid);
    const double n_f1_0 = sobolev_norm(truth.f1, 0, truth.grid);
    const double n_f0_2 = sobolev_norm(truth.f0, 2, truth.grid);
    const double n_f1_1 = sobolev_norm(truth.f1, 1, truth.grid);
    const double M = constant_M(truth);
    const auto thm = theorem_rhs(eps2, K, E, alpha, M);

    std::vector<StabilityReport> out;
    for (const auto seed : spec.seeds) {
        const auto noisy = add_noise(clean, eps2, seed);
        const auto res = invert(solver, noisy, std::sqrt(eps2), &truth, spec.inversion);
        StabilityReport r;
        r.K = K;
        r.alpha = alpha;
        r.seed = seed;
        r.eps2 = eps2;
        r.E = E;
        r.k_split = ks;
        r.I1 = iv.I1;
        r.I2 = iv.I2;
        r.I = iv.I();
        r.mu_lb = harmonic_measure_lb(ks, K);
        r.lemma21_rhs = lemma21_bound(ks, ks, alpha, n_f1_0, n_f0_0, cfg.c_max());
        r.tail_rhs = tail_bound(ks, alpha, n_f0_2, n_f1_1);
        r.thm_rhs = thm.value;
        r.e_undefined = thm.e_undefined;
        r.err_l2 = res.err_l2.value_or(0.0);
        r.rel_err_f0 = res.rel_err_f0.value_or(0.0);
        r.rel_err_f1 = res.rel_err_f1.value_or(0.0);
        r.lambda = res.lambda;
        r.residual = res.residual;
        r.converged = res.converged;
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<StabilityReport> run_sweep(const SweepSpec& spec, unsigned jobs) {
    spec.validate();
    const std::size_t nK = spec.K_list.size();
    const std::size_t nA = spec.alpha_list.size();
    std::vector<std::vector<StabilityReport>> cells(nK * nA);

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(cells.size());
    auto worker = [&] {
        for (std::size_t c = next++; c < cells.size(); c = next++) {
            try {
                cells[c] = run_cell(spec, spec.K_list[c / nA], spec.alpha_list[c % nA]);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<StabilityReport> out;
    for (auto& cell : cells) out.insert(out.end(), cell.begin(), cell.end());
    return out;
}

GrowthFit fit_gaussian_growth(std::span<const double> alphas, std::span<const double> ratios) {
    if (alphas.size() != ratios.size() || alphas.empty()) {
        throw std::invalid_argument("growth fit: need matching, non-empty samples");
    }
    for (double r : ratios) {
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("growth fit: ratios must be positive");
    }
    // worst log-misfit as a function of c = ln C
    auto misfit = [&](double c) {
        double worst = 0.0;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            worst = std::max(worst, std::abs(std::log(ratios[i]) - c - std::exp(c) * alphas[i] * alphas[i]));
        }
        return worst;
    };
    constexpr double lo = -20.0, hi = 5.0;
    constexpr int scan = 5000;
    double best_c = lo, best = misfit(lo);
    for (int s = 1; s <= scan; ++s) {
        const double c = lo + (hi - lo) * s / scan;
        const double m = misfit(c);
        if (m < best) best = m, best_c = c;
    }
    double a = best_c - (hi - lo) / scan, b = best_c + (hi - lo) / scan;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 100; ++it) {
        const double c1 = b - g * (b - a), c2 = a + g * (b - a);
        if (misfit(c1) < misfit(c2)) {
            b = c2;
        } else {
            a = c1;
        }
    }
    const double c = 0.5 * (a + b);
    GrowthFit fit;
    fit.C = std::exp(c);
    fit.residual_factor = std::exp(misfit(c));
    fit.envelope = true;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (ratios[i] > fit.C * std::exp(fit.C * alphas[i] * alphas[i])) fit.envelope = false;
    }
    return fit;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<std::vector<double>> median_errors(const SweepSpec& spec, std::span<const StabilityReport> reports) {
    std::vector<std::vector<double>> out(spec.K_list.size(), std::vector<double>(spec.alpha_list.size(), 0.0));
    for (std::size_t i = 0; i < spec.K_list.size(); ++i) {
        for (std::size_t a = 0; a < spec.alpha_list.size(); ++a) {
            std::vector<double> errs;
            for (const auto& r : reports) {
                if (r.K == spec.K_list[i] && r.alpha == spec.alpha_list[a]) errs.push_back(r.err_l2);
            }
            if (!errs.empty()) out[i][a] = median(errs);
        }
    }
    return out;
}

TrendVerdict non_increasing(std::span<const double> values, double jitter) {
    TrendVerdict v;
    v.worst_step = values.size() > 1 ? 0.0 : 1.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double step = values[i - 1] > 0.0 ? values[i] / values[i - 1] : (values[i] > 0.0 ? INFINITY : 1.0);
        v.worst_step = std::max(v.worst_step, step);
        if (values[i] > (1.0 + jitter) * values[i - 1]) v.holds = false;
    }
    return v;
}

TrendVerdict non_decreasing(std::span<const double> values, double jitter) {
    TrendVerdict v;
    v.worst_step = values.size() > 1 ? INFINITY : 1.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double step = values[i - 1] > 0.0 ? values[i] / values[i - 1] : INFINITY;
        v.worst_step = std::min(v.worst_step, step);
        if (values[i] * (1.0 + jitter) < values[i - 1]) v.holds = false;
    }
    return v;
}

bool SweepSummary::trends_hold() const {
    const auto ok = [](const TrendVerdict& v) { return v.holds; };
    return std::all_of(along_K.begin(), along_K.end(), ok) && std::all_of(along_alpha.begin(), along_alpha.end(), ok);
}

SweepSummary summarize(const SweepSpec& spec, std::span<const StabilityReport> reports, double jitter) {
    SweepSummary s;
    for (const auto& r : reports) {
        s.fitted_constant = std::max(s.fitted_constant, r.ratio());
        s.all_converged = s.all_converged && r.converged;
    }
    const auto med = median_errors(spec, reports);
    // Trends are judged on the lists in ascending order.
    std::vector<std::size_t> k_order(spec.K_list.size()), a_order(spec.alpha_list.size());
    for (std::size_t i = 0; i < k_order.size(); ++i) k_order[i] = i;
    for (std::size_t i = 0; i < a_order.size(); ++i) a_order[i] = i;
    std::sort(k_order.begin(), k_order.end(), [&](auto x, auto y) { return spec.K_list[x] < spec.K_list[y]; });
    std::sort(a_order.begin(), a_order.end(), [&](auto x, auto y) { return spec.alpha_list[x] < spec.alpha_list[y]; });

    for (std::size_t a : a_order) {
        std::vector<double> col;
        for (std::size_t i : k_order) col.push_back(med[i][a]);
        s.along_K.push_back(non_increasing(col, jitter));
    }
    for (std::size_t i : k_order) {
        std::vector<double> row;
        for (std::size_t a : a_order) row.push_back(med[i][a]);
        s.along_alpha.push_back(non_decreasing(row, jitter));
    }
    return s;
}

}  // namespace helmstab
