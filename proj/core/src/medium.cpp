#include "helmstab/medium.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace helmstab {

MediumConfig::MediumConfig(double c_p, double c_n, double alpha)
    : c_p_(c_p), c_n_(c_n), alpha_(alpha) {
    if (!(c_p > 0.0) || !(c_n > 0.0) || !std::isfinite(c_p) || !std::isfinite(c_n)) {
        throw std::invalid_argument("medium: layer coefficients must be positive and finite (c_p=" +
                                    std::to_string(c_p) + ", c_n=" + std::to_string(c_n) + ")");
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("medium: attenuation must be >= 0 (alpha=" + std::to_string(alpha) +
                                    ")");
    }
}

ComplexWavenumber kappa_of(double k, double alpha) {
    if (k < 0.0 || alpha < 0.0) {
        throw std::invalid_argument("kappa_of: k and alpha must be non-negative");
    }
    if (k == 0.0) return {0.0, cplx{0.0, 0.0}};
    if (alpha == 0.0) return {k, cplx{k, 0.0}};
    // k^2 + i alpha k has non-negative imaginary part, so the principal root
    // already lies in the closed first quadrant.
    return {k, std::sqrt(cplx{k * k, alpha * k})};
}

LayerWavenumbers layer_wavenumbers(const MediumConfig& cfg, double omega) {
    if (omega < 0.0) throw std::invalid_argument("layer_wavenumbers: omega must be >= 0");
    return {kappa_of(cfg.c_p() * omega, cfg.alpha()), kappa_of(cfg.c_n() * omega, cfg.alpha())};
}

}  // namespace helmstab
