#pragma once
/**
 * @file medium.hpp
 * @brief Two-layer attenuated medium and complex wavenumbers.
 *
 * The medium occupies the real line with an interface at x = 0. Each layer
 * carries a real coefficient c so that the local wavenumber at angular
 * frequency omega is k = c * omega. Attenuation alpha enters through
 * kappa^2 = k^2 + i * alpha * k.
 */

#include <algorithm>
#include <complex>

namespace helmstab {

using cplx = std::complex<double>;

/// Layer coefficients (c_p for x > 0, c_n for x < 0) and the attenuation.
class MediumConfig {
public:
    MediumConfig() = default;

    /// Throws std::invalid_argument unless c_p > 0, c_n > 0 and alpha >= 0.
    MediumConfig(double c_p, double c_n, double alpha);

    double c_p() const { return c_p_; }
    double c_n() const { return c_n_; }
    double alpha() const { return alpha_; }
    double c_max() const { return std::max(c_p_, c_n_); }
    double c_min() const { return std::min(c_p_, c_n_); }
    bool homogeneous() const { return c_p_ == c_n_; }

    /// Same layers, different attenuation.
    MediumConfig with_alpha(double alpha) const { return {c_p_, c_n_, alpha}; }

    friend bool operator==(const MediumConfig&, const MediumConfig&) = default;

private:
    double c_p_ = 1.0;
    double c_n_ = 1.0;
    double alpha_ = 0.0;
};

struct ComplexWavenumber {
    double k = 0.0;    ///< real wavenumber c * omega
    cplx kappa{0.0};   ///< sqrt(k^2 + i alpha k), Re >= 0, Im >= 0
};

/// kappa(k, alpha) on the branch Re kappa >= 0, Im kappa >= 0.
/// k = 0 gives kappa = 0; alpha = 0 gives kappa == k exactly.
ComplexWavenumber kappa_of(double k, double alpha);

struct LayerWavenumbers {
    ComplexWavenumber pos;   ///< x > 0 layer
    ComplexWavenumber neg;   ///< x < 0 layer
};

LayerWavenumbers layer_wavenumbers(const MediumConfig& cfg, double omega);

}  // namespace helmstab
