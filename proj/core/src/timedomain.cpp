#include "helmstab/timedomain.hpp"

#include "helmstab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace helmstab {

namespace {

constexpr cplx kI{0.0, 1.0};

// Linear interpolation of grid samples; exact at coinciding nodes.
double sample_at(const SourceGrid& grid, std::span<const double> f, double x) {
    if (x <= -1.0 || x >= 1.0) return 0.0;
    const double p = (x + 1.0) / grid.h();
    const double r = std::round(p);
    if (std::abs(p - r) < 1e-9) return f[static_cast<std::size_t>(r)];
    const auto i = static_cast<std::size_t>(std::floor(p));
    const double w = p - static_cast<double>(i);
    return (1.0 - w) * f[i] + w * f[i + 1];
}

}  // namespace

double cfl_limit(double h) { return 0.9 * h; }

WaveState solve_wave(const MediumConfig& cfg, const SourcePair& sp, const WaveOptions& opts) {
    if (!(cfg.c_p() == 1.0 && cfg.c_n() == 1.0)) {
        throw std::invalid_argument(
            "solve_wave: only the unit-speed homogeneous medium (c_p = c_n = 1) has a time-domain counterpart");
    }
    if (!(opts.T > 0.0) || !std::isfinite(opts.T)) throw std::invalid_argument("solve_wave: T must be positive");
    if (!(opts.h > 0.0) || opts.h > 0.25) throw std::invalid_argument("solve_wave: h must lie in (0, 0.25]");
    sp.validate();

    // Snap h so that x = -1, 0, 1 are nodes.
    const auto cells_per_unit = static_cast<std::size_t>(std::llround(1.0 / opts.h));
    const double h = 1.0 / static_cast<double>(cells_per_unit);
    if (!(opts.dt > 0.0) || opts.dt > cfl_limit(h)) {
        throw std::invalid_argument("solve_wave: dt=" + std::to_string(opts.dt) + " violates the CFL limit " +
                                    std::to_string(cfl_limit(h)));
    }
    const auto steps = static_cast<std::size_t>(std::ceil(opts.T / opts.dt - 1e-9));
    const double dt = opts.T / static_cast<double>(steps);

    // Unit speed: nothing leaves [-1, 1] faster than t, so reflections from
    // |x| = L return to |x| <= 1 only after 2 (L - 1) > T.
    const auto outer = static_cast<std::size_t>(std::ceil((opts.T + 1.0) / h));
    const std::size_t centre = cells_per_unit + outer;
    const std::size_t nodes = 2 * centre + 1;
    const std::size_t j_minus = centre - cells_per_unit;
    const std::size_t j_plus = centre + cells_per_unit;

    WaveState ws;
    ws.alpha = cfg.alpha();
    ws.h = h;
    ws.dt = dt;
    ws.T = opts.T;
    ws.L = static_cast<double>(centre) * h;
    ws.x.resize(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
        ws.x[j] = (static_cast<double>(j) - static_cast<double>(centre)) * h;
    }

    std::vector<double> f0(nodes, 0.0), f1(nodes, 0.0);
    for (std::size_t j = j_minus; j <= j_plus; ++j) {
        f0[j] = sample_at(sp.grid, sp.f0, ws.x[j]);
        f1[j] = sample_at(sp.grid, sp.f1, ws.x[j]);
    }

    const double alpha = cfg.alpha();
    const double r2 = (dt / h) * (dt / h);
    const double damp = 0.5 * alpha * dt;

    auto laplacian = [&](const std::vector<double>& u, std::size_t j) {
        return (u[j + 1] - 2.0 * u[j] + u[j - 1]) / (h * h);
    };

    std::vector<double> prev = f0;
    std::vector<double> curr(nodes, 0.0);
    std::vector<double> next(nodes, 0.0);
    for (std::size_t j = 1; j + 1 < nodes; ++j) {
        curr[j] = f0[j] + dt * f1[j] + 0.5 * dt * dt * (laplacian(f0, j) - alpha * f1[j]);
    }

    auto advance = [&](const std::vector<double>& um1, const std::vector<double>& u, std::vector<double>& up) {
        up.front() = 0.0;
        up.back() = 0.0;
        for (std::size_t j = 1; j + 1 < nodes; ++j) {
            up[j] = (2.0 * u[j] - (1.0 - damp) * um1[j] + r2 * (u[j + 1] - 2.0 * u[j] + u[j - 1])) / (1.0 + damp);
        }
    };

    ws.t.resize(steps + 1);
    for (auto* v : {&ws.u_minus, &ws.u_plus, &ws.ut_minus, &ws.ut_plus, &ws.utt_minus, &ws.utt_plus}) {
        v->assign(steps + 1, 0.0);
    }
    for (std::size_t m = 0; m <= steps; ++m) ws.t[m] = static_cast<double>(m) * dt;

    auto snapshot = [&](std::size_t m, const std::vector<double>& u) {
        if (opts.snapshot_stride > 0 && m % opts.snapshot_stride == 0) ws.snapshots.push_back({ws.t[m], u});
    };

    // m = 0 from the initial data and the equation itself.
    ws.u_minus[0] = f0[j_minus];
    ws.u_plus[0] = f0[j_plus];
    ws.ut_minus[0] = f1[j_minus];
    ws.ut_plus[0] = f1[j_plus];
    ws.utt_minus[0] = laplacian(f0, j_minus) - alpha * f1[j_minus];
    ws.utt_plus[0] = laplacian(f0, j_plus) - alpha * f1[j_plus];
    snapshot(0, prev);

    // Invariant at the top of the loop: prev = U^{m-1}, curr = U^m.
    for (std::size_t m = 1; m <= steps; ++m) {
        advance(prev, curr, next);
        ws.u_minus[m] = curr[j_minus];
        ws.u_plus[m] = curr[j_plus];
        ws.ut_minus[m] = (next[j_minus] - prev[j_minus]) / (2.0 * dt);
        ws.ut_plus[m] = (next[j_plus] - prev[j_plus]) / (2.0 * dt);
        ws.utt_minus[m] = (next[j_minus] - 2.0 * curr[j_minus] + prev[j_minus]) / (dt * dt);
        ws.utt_plus[m] = (next[j_plus] - 2.0 * curr[j_plus] + prev[j_plus]) / (dt * dt);
        snapshot(m, curr);
        std::swap(prev, curr);
        std::swap(curr, next);
    }
    return ws;
}

double light_cone_leak(const WaveState& ws) {
    double leak = 0.0;
    for (const auto& snap : ws.snapshots) {
        for (std::size_t j = 0; j < ws.x.size(); ++j) {
            if (std::abs(ws.x[j]) > 1.0 + snap.t) leak = std::max(leak, std::abs(snap.u[j]));
        }
    }
    return leak;
}

namespace {

cplx transform_trace(const WaveState& ws, std::span<const double> u, std::span<const double> ut,
                     std::span<const double> utt, double omega) {
    const std::size_t n = u.size();
    cplx sum{0.0};
    for (std::size_t m = 0; m < n; ++m) {
        const double w = (m == 0 || m + 1 == n) ? 0.5 : 1.0;
        sum += w * u[m] * std::exp(kI * (omega * ws.t[m]));
    }
    sum *= ws.dt;
    // int_T^inf g e^{iwt} dt for slowly varying g, by repeated integration by parts.
    const cplx iw = kI * omega;
    const cplx tail = std::exp(kI * (omega * ws.T)) * (-u[n - 1] / iw + ut[n - 1] / (iw * iw) - utt[n - 1] / (iw * iw * iw));
    return sum + tail;
}

}  // namespace

BoundaryDataset trace_transform(const WaveState& ws, std::span<const double> omegas) {
    check_omega_grid(omegas);
    BoundaryDataset ds;
    ds.medium = MediumConfig(1.0, 1.0, ws.alpha);
    ds.omegas.assign(omegas.begin(), omegas.end());
    ds.d_minus.resize(omegas.size());
    ds.d_plus.resize(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double w = omegas[i];
        ds.d_minus[i] = w * transform_trace(ws, ws.u_minus, ws.ut_minus, ws.utt_minus, w);
        ds.d_plus[i] = w * transform_trace(ws, ws.u_plus, ws.ut_plus, ws.utt_plus, w);
    }
    ds.refresh();
    return ds;
}

ObservabilityReport observability_check(const WaveState& ws, const SourcePair& sp) {
    ObservabilityReport rep;
    const double n1 = sobolev_norm(sp.f0, 1, sp.grid);
    const double n0 = sobolev_norm(sp.f1, 0, sp.grid);
    rep.lhs = n1 * n1 + n0 * n0;
    std::vector<double> energy(ws.t.size());
    for (std::size_t m = 0; m < ws.t.size(); ++m) {
        energy[m] = ws.ut_minus[m] * ws.ut_minus[m] + ws.u_minus[m] * ws.u_minus[m] +
                    ws.ut_plus[m] * ws.ut_plus[m] + ws.u_plus[m] * ws.u_plus[m];
    }
    rep.rhs = trapezoid<double>(energy, ws.dt);
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
    return rep;
}

DecayReport decay_check(const WaveState& ws, double t_fit) {
    if (ws.snapshots.empty()) throw std::invalid_argument("decay_check: solve_wave was run without snapshots");
    DecayReport rep;
    for (const auto& snap : ws.snapshots) {
        std::vector<double> sq(snap.u.size());
        for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = snap.u[j] * snap.u[j];
        rep.samples.push_back({snap.t, std::sqrt(trapezoid<double>(sq, ws.h))});
    }
    const double n0 = rep.samples.front().norm;
    double peak = 0.0;
    for (const auto& s : rep.samples) peak = std::max(peak, s.norm);
    rep.bound_factor = n0 > 0.0 ? peak / n0 : 0.0;

    // Least-squares slope of log norm against log(1 + t).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (const auto& s : rep.samples) {
        if (s.t < t_fit || !(s.norm > 0.0)) continue;
        const double lx = std::log1p(s.t);
        const double ly = std::log(s.norm);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count >= 2) {
        const double c = static_cast<double>(count);
        const double denom = c * sxx - sx * sx;
        rep.fitted_exponent = denom > 0.0 ? (c * sxy - sx * sy) / denom : 0.0;
    }
    return rep;
}

double ParsevalSides::relative_gap() const {
    const double scale = std::max(std::abs(frequency_side), std::abs(time_side));
    return scale > 0.0 ? std::abs(frequency_side - time_side) / scale : 0.0;
}

ParsevalSides parseval_sides(const WaveState& ws, const BoundaryDataset& freq) {
    ParsevalSides out;
    // omega^4 |u|^2 = omega^2 |omega u|^2, which vanishes at omega = 0.
    std::vector<double> w{0.0};
    std::vector<double> density{0.0};
    for (std::size_t i = 0; i < freq.omegas.size(); ++i) {
        const double om = freq.omegas[i];
        w.push_back(om);
        density.push_back(om * om * (std::norm(freq.d_minus[i]) + std::norm(freq.d_plus[i])));
    }
    out.frequency_side = 2.0 * trapezoid<double>(w, density);

    std::vector<double> sq(ws.t.size());
    for (std::size_t m = 0; m < sq.size(); ++m) {
        sq[m] = ws.utt_minus[m] * ws.utt_minus[m] + ws.utt_plus[m] * ws.utt_plus[m];
    }
    out.time_side = 2.0 * std::numbers::pi * trapezoid<double>(sq, ws.dt);
    return out;
}

}  // namespace helmstab
