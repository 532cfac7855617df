#pragma once
/**
 * @file greens.hpp
 * @brief Two-layer attenuated Green's function, forward field and boundary data.
 *
 * G(x, y) is the outgoing kernel of u'' + kappa(x)^2 u with kappa_p for x > 0
 * and kappa_n for x < 0; u and u' are continuous across x = 0. The kernel
 * satisfies G'' + kappa^2 G = -delta(x - y), so the representation
 *
 *     u(x) = int G(x, y) (-f1 - alpha f0 + i k(y) f0)(y) dy
 *
 * solves u'' + (k^2 + i alpha k) u = kSourceSign * (-f1 - alpha f0 + i k f0).
 * The sign was fixed against a finite-difference solve (see tests/unit).
 */

#include "helmstab/medium.hpp"
#include "helmstab/sources.hpp"

#include <optional>
#include <span>
#include <vector>

namespace helmstab {

/// Global sign relating the Green representation to the Helmholtz source term.
inline constexpr double kSourceSign = -1.0;

/// G(x, y) for omega > 0. Throws std::invalid_argument for omega <= 0.
cplx green(const MediumConfig& cfg, double omega, double x, double y);

/// Layer-local source density -f1 - alpha f0 + i k(y) f0 with k(y) = c(y) omega.
/// y == 0 belongs to the positive layer.
cplx source_density(const MediumConfig& cfg, double omega, double y, double f0, double f1);

/// Trapezoid quadrature over [-1, 1] of G(x, y) * source_density.
cplx forward_field(const MediumConfig& cfg, const SourcePair& sp, double omega, double x);

/// omega * G(-1, y) and omega * G(1, y) written in the three-term
/// transmission / reflection / direct form. Exponents and coefficients carry
/// the complex kappa_p, kappa_n (attenuated representation).
struct BoundaryKernel {
    cplx minus;
    cplx plus;
};
BoundaryKernel boundary_kernel(const MediumConfig& cfg, double omega, double y);

/// Multi-frequency Dirichlet data at x = -1 and x = 1.
struct BoundaryDataset {
    std::vector<double> omegas;        ///< strictly increasing, > 0
    std::vector<cplx> d_minus;         ///< omega * u(-1, omega)
    std::vector<cplx> d_plus;          ///< omega * u(1, omega)
    double K = 0.0;                    ///< bandwidth (last omega)
    double epsilon2 = 0.0;             ///< trapezoid of |d_minus|^2 + |d_plus|^2
    double noise_eps2 = 0.0;           ///< energy of injected noise, same functional
    MediumConfig medium;

    /// -ln(eps) from epsilon2; empty unless 0 < epsilon2 < 1.
    std::optional<double> E() const;

    /// Recomputes epsilon2 and K from the stored samples.
    void refresh();
};

/// Data energy trapezoid(|d_minus|^2 + |d_plus|^2) over the omega grid.
double data_energy(std::span<const double> omegas, std::span<const cplx> d_minus,
                   std::span<const cplx> d_plus);

/// Uniform grid omega_j = j K / count, j = 1..count.
std::vector<double> uniform_omegas(double K, std::size_t count);

/// Uniform grid on (0, K] with spacing at most `max_spacing`.
std::vector<double> uniform_omegas_spacing(double K, double max_spacing);

/// Throws unless omegas is non-empty, strictly increasing and positive.
void check_omega_grid(std::span<const double> omegas);

/// Evaluates the boundary representation at every omega (in grid order).
BoundaryDataset boundary_data(const MediumConfig& cfg, const SourcePair& sp, std::span<const double> omegas);

}  // namespace helmstab
