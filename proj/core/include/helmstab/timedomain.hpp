#pragma once
/**
 * @file timedomain.hpp
 * @brief Damped wave equation U_tt - U_xx + alpha U_t = 0 on the line.
 *
 * U(x, 0) = f0, U_t(x, 0) = f1. Explicit leapfrog with the damping term
 * centered in time; the line is truncated at |x| = L far enough that the
 * zero Dirichlet ends never influence [-1, 1] x [0, T]. Only the unit-speed
 * homogeneous medium (c_p == c_n == 1) is supported: that is the case in
 * which the time-Fourier transform of U reproduces the Helmholtz model.
 */

#include "helmstab/greens.hpp"
#include "helmstab/medium.hpp"
#include "helmstab/sources.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace helmstab {

struct WaveOptions {
    double T = 9.0;
    double h = 0.005;
    double dt = 0.004;
    /// Store U(., t) every `snapshot_stride` steps (0 disables snapshots).
    std::size_t snapshot_stride = 0;
};

struct WaveSnapshot {
    double t = 0.0;
    std::vector<double> u;
};

struct WaveState {
    double alpha = 0.0;
    double h = 0.0;
    double dt = 0.0;
    double T = 0.0;
    double L = 0.0;                 ///< truncation half-width
    std::vector<double> x;          ///< nodes on [-L, L]
    std::vector<double> t;          ///< t_m = m dt, m = 0..steps
    std::vector<double> u_minus, u_plus;      ///< U(-1, t), U(1, t)
    std::vector<double> ut_minus, ut_plus;    ///< U_t(+-1, t)
    std::vector<double> utt_minus, utt_plus;  ///< U_tt(+-1, t)
    std::vector<WaveSnapshot> snapshots;

    std::size_t steps() const { return t.empty() ? 0 : t.size() - 1; }
};

/// Largest stable step for spacing h (0.9 h for unit speed).
double cfl_limit(double h);

/// Throws std::invalid_argument when the medium is not unit-speed
/// homogeneous, T <= 0, or dt violates the CFL limit.
WaveState solve_wave(const MediumConfig& cfg, const SourcePair& sp, const WaveOptions& opts);

/// Largest |U| on snapshot nodes outside the light cone |x| > 1 + t.
double light_cone_leak(const WaveState& ws);

/// omega * U^(+-1, omega) with U^(x, omega) = int_0^inf U(x, t) e^{i omega t} dt.
/// Trapezoid over the recorded window, plus an asymptotic closure of the
/// smooth late-time tail beyond T from the last U, U_t, U_tt samples.
BoundaryDataset trace_transform(const WaveState& ws, std::span<const double> omegas);

struct ObservabilityReport {
    double lhs = 0.0;    ///< ||f0||_(1)^2 + ||f1||_(0)^2
    double rhs = 0.0;    ///< sum over x = +-1 of int_0^T (U_t^2 + U^2) dt
    double ratio = 0.0;  ///< lhs / rhs, 0 when both vanish
};

ObservabilityReport observability_check(const WaveState& ws, const SourcePair& sp);

struct DecaySample {
    double t = 0.0;
    double norm = 0.0;   ///< ||U(., t)||_(0) over the truncated line
};

struct DecayReport {
    std::vector<DecaySample> samples;
    double bound_factor = 0.0;   ///< max_t ||U(t)|| / ||U(0)||
    double fitted_exponent = 0.0;///< slope of log ||U|| vs log(1 + t) over t >= t_fit
};

/// Needs snapshots. The exponent is fitted over t in [t_fit, T].
DecayReport decay_check(const WaveState& ws, double t_fit = 5.0);

struct ParsevalSides {
    double frequency_side = 0.0;  ///< int_R omega^4 (|u(-1)|^2 + |u(1)|^2) d omega
    double time_side = 0.0;       ///< 2 pi int (U_tt(-1)^2 + U_tt(1)^2) dt
    double relative_gap() const;
};

/// Frequency side from a dataset of omega * u values on (0, Omega]
/// (doubled for negative frequencies); time side from the recorded traces.
ParsevalSides parseval_sides(const WaveState& ws, const BoundaryDataset& freq);

}  // namespace helmstab
