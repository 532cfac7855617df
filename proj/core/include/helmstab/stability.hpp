#pragma once
/**
 * @file stability.hpp
 * @brief Boundary-energy functionals, the closed-form stability bounds and
 *        the (K, alpha) reconstruction sweep.
 *
 * Every bound carries an unspecified generic constant; the evaluators here
 * use C = 1 and the sweep reports fitted constants instead of asserting
 * absolute inequalities.
 */

#include "helmstab/greens.hpp"
#include "helmstab/inversion.hpp"
#include "helmstab/medium.hpp"
#include "helmstab/sources.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace helmstab {

struct IValues {
    double I1 = 0.0;  ///< int omega^2 |u(-1, omega)|^2
    double I2 = 0.0;  ///< int omega^2 |u(1, omega)|^2
    double I() const { return I1 + I2; }
};

/// Trapezoid integrals of |d_minus|^2 and |d_plus|^2 over the stored grid
/// up to k (linear interpolation of the integrand in the last cell).
/// Throws std::out_of_range when k lies beyond the last frequency.
IValues I_functionals(const BoundaryDataset& ds, double k);

/// (|k| ||f1||_0^2 + (|k| alpha^2 + |k|^3 / 3) ||f0||_0^2) exp(4 c_max (4 k1 + alpha)).
/// Takes the norms themselves, not their squares.
double lemma21_bound(double k_modulus, double k1, double alpha, double norm_f1_0, double norm_f0_0,
                     double c_max);

/// 1/2 for k <= 2^{1/4} K, else (1/pi) ((k/K)^4 - 1)^{-1/2}.
double harmonic_measure_lb(double k, double K);

/// ((1 + alpha^2) ||f0||_2^2 + ||f1||_1^2) / k.
double tail_bound(double k, double alpha, double norm_f0_2, double norm_f1_1);

/// K^{2/3} E^{1/4} when 2^{1/4} K^{1/3} < E^{1/4}, else K.
double k_split(double K, double E);

struct TheoremRhs {
    double value = 0.0;
    bool e_undefined = false;   ///< eps2 >= 1: E taken as 0
};

/// exp(alpha^2) (eps2 + (alpha^2 + 1) M^2 / (K^{2/3} E^{1/4} + 1)).
TheoremRhs theorem_rhs(double eps2, double K, double E, double alpha, double M);

/// Same, with E derived from eps2 (E = -ln sqrt(eps2), 0 when eps2 >= 1).
TheoremRhs theorem_rhs_from_eps2(double eps2, double K, double alpha, double M);

struct TailEstimate {
    double tail = 0.0;        ///< int_k^{8k} omega^2 (|u(-1)|^2 + |u(1)|^2)
    double tail_long = 0.0;   ///< same up to 16k (truncation check)
    double bound = 0.0;       ///< tail_bound(k, ...) with C = 1
    double constant() const { return bound > 0.0 ? tail / bound : 0.0; }
};

/// Numerical high-frequency tail of the boundary energy for a source pair.
/// The source grid must resolve c_max * 16 k.
TailEstimate empirical_tail(const MediumConfig& cfg, const SourcePair& sp, double k);

/// Single-constant fit of a growth law r(alpha) ~ C exp(C alpha^2).
struct GrowthFit {
    double C = 0.0;
    double residual_factor = 0.0;   ///< max_i max(r_i / model_i, model_i / r_i)
    bool envelope = false;          ///< r_i <= model_i for every i
};

/// Minimax fit in log space over C > 0. Ratios must be positive.
GrowthFit fit_gaussian_growth(std::span<const double> alphas, std::span<const double> ratios);

/// Frequency spacing used for inversion grids: pi / (4 c_max).
double inversion_omega_spacing(const MediumConfig& cfg);

struct StabilityReport {
    double K = 0.0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    double eps2 = 0.0;               ///< injected noise energy
    std::optional<double> E;
    double k_split = 0.0;
    double I1 = 0.0, I2 = 0.0, I = 0.0;   ///< clean-data functionals at k_split
    double mu_lb = 0.0;
    double lemma21_rhs = 0.0;
    double tail_rhs = 0.0;
    double thm_rhs = 0.0;
    double err_l2 = 0.0;
    double rel_err_f0 = 0.0;
    double rel_err_f1 = 0.0;
    double lambda = 0.0;
    double residual = 0.0;
    bool converged = true;
    bool e_undefined = false;

    double ratio() const { return thm_rhs > 0.0 ? err_l2 / thm_rhs : 0.0; }
};

struct SweepSpec {
    double c_p = 1.0;
    double c_n = 1.0;
    SourcePair truth;
    std::vector<double> K_list;
    std::vector<double> alpha_list;
    double eps2_target = 1e-6;
    std::vector<std::uint64_t> seeds{1};
    InversionOptions inversion;

    /// Throws std::invalid_argument on empty lists, K <= 1, alpha < 0,
    /// eps2 outside (0, 1), no seeds, or a truth grid that does not resolve
    /// 20 nodes per wavelength at c_max * max K.
    void validate() const;
};

/// One report per (K, alpha, seed), ordered by K, then alpha, then seed.
/// Cells run on up to `jobs` threads; the output does not depend on `jobs`.
std::vector<StabilityReport> run_sweep(const SweepSpec& spec, unsigned jobs = 1);

struct TrendVerdict {
    bool holds = true;
    double worst_step = 0.0;   ///< largest violating ratio between neighbours (1 = flat)
};

/// Medians over seeds of err_l2 per (K, alpha), indexed [K][alpha] in the
/// order of the spec lists.
std::vector<std::vector<double>> median_errors(const SweepSpec& spec, std::span<const StabilityReport> reports);

/// values[i+1] <= (1 + jitter) values[i] for all i.
TrendVerdict non_increasing(std::span<const double> values, double jitter = 0.05);
/// values[i+1] >= values[i] / (1 + jitter) for all i.
TrendVerdict non_decreasing(std::span<const double> values, double jitter = 0.05);

struct SweepSummary {
    double fitted_constant = 0.0;                   ///< max over cells of err_l2 / thm_rhs
    std::vector<TrendVerdict> along_K;              ///< one per alpha
    std::vector<TrendVerdict> along_alpha;          ///< one per K
    bool all_converged = true;
    bool trends_hold() const;
};

SweepSummary summarize(const SweepSpec& spec, std::span<const StabilityReport> reports, double jitter = 0.05);

double median(std::vector<double> values);

}  // namespace helmstab
