#include "helmstab/greens.hpp"

#include "helmstab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace helmstab {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_omega(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("omega must be positive and finite (got " + std::to_string(omega) + ")");
    }
}

}  // namespace

cplx green(const MediumConfig& cfg, double omega, double x, double y) {
    check_omega(omega);
    const auto [pos, neg] = layer_wavenumbers(cfg, omega);
    const cplx kp = pos.kappa;
    const cplx kn = neg.kappa;
    const cplx sum = kp + kn;

    if (y >= 0.0) {
        if (x >= 0.0) {
            return kI * (kp - kn) / (2.0 * kp * sum) * std::exp(kI * kp * (x + y)) +
                   kI / (2.0 * kp) * std::exp(kI * kp * std::abs(x - y));
        }
        return kI / sum * std::exp(kI * (kp * y - kn * x));
    }
    // Source in the negative layer: mirror image of the case above.
    if (x < 0.0) {
        return kI * (kn - kp) / (2.0 * kn * sum) * std::exp(-kI * kn * (x + y)) +
               kI / (2.0 * kn) * std::exp(kI * kn * std::abs(x - y));
    }
    return kI / sum * std::exp(kI * (kp * x - kn * y));
}

cplx source_density(const MediumConfig& cfg, double omega, double y, double f0, double f1) {
    const double k = (y >= 0.0 ? cfg.c_p() : cfg.c_n()) * omega;
    return cplx{-f1 - cfg.alpha() * f0, k * f0};
}

cplx forward_field(const MediumConfig& cfg, const SourcePair& sp, double omega, double x) {
    check_omega(omega);
    const auto& grid = sp.grid;
    std::vector<cplx> integrand(grid.n());
    for (std::size_t j = 0; j < grid.n(); ++j) {
        const double y = grid.x(j);
        if (sp.f0[j] == 0.0 && sp.f1[j] == 0.0) {
            integrand[j] = 0.0;
            continue;
        }
        integrand[j] = green(cfg, omega, x, y) * source_density(cfg, omega, y, sp.f0[j], sp.f1[j]);
    }
    return trapezoid<cplx>(integrand, grid.h());
}

BoundaryKernel boundary_kernel(const MediumConfig& cfg, double omega, double y) {
    check_omega(omega);
    const auto [pos, neg] = layer_wavenumbers(cfg, omega);
    const cplx kp = pos.kappa;
    const cplx kn = neg.kappa;
    const cplx sum = kp + kn;

    BoundaryKernel out;
    if (y >= 0.0) {
        // x = -1: transmitted through the interface.
        out.minus = omega * kI / sum * std::exp(kI * (kp * y + kn));
        // x = 1: reflected off the interface plus direct.
        out.plus = omega * (kI * (kp - kn) / (2.0 * kp * sum) * std::exp(kI * kp * (1.0 + y)) +
                            kI / (2.0 * kp) * std::exp(kI * kp * (1.0 - y)));
    } else {
        out.minus = omega * (kI * (kn - kp) / (2.0 * kn * sum) * std::exp(-kI * kn * (-1.0 + y)) +
                             kI / (2.0 * kn) * std::exp(kI * kn * (1.0 + y)));
        out.plus = omega * kI / sum * std::exp(kI * (kp - kn * y));
    }
    return out;
}

std::optional<double> BoundaryDataset::E() const {
    if (!(epsilon2 > 0.0) || !(epsilon2 < 1.0)) return std::nullopt;
    return -0.5 * std::log(epsilon2);
}

double data_energy(std::span<const double> omegas, std::span<const cplx> d_minus, std::span<const cplx> d_plus) {
    if (omegas.size() != d_minus.size() || omegas.size() != d_plus.size()) {
        throw std::invalid_argument("data_energy: size mismatch");
    }
    std::vector<double> density(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) density[i] = std::norm(d_minus[i]) + std::norm(d_plus[i]);
    return trapezoid<double>(omegas, density);
}

void BoundaryDataset::refresh() {
    epsilon2 = data_energy(omegas, d_minus, d_plus);
    K = omegas.empty() ? 0.0 : omegas.back();
}

std::vector<double> uniform_omegas(double K, std::size_t count) {
    if (!(K > 0.0) || count == 0) throw std::invalid_argument("uniform_omegas: need K > 0 and count >= 1");
    std::vector<double> w(count);
    for (std::size_t j = 0; j < count; ++j) w[j] = K * static_cast<double>(j + 1) / static_cast<double>(count);
    return w;
}

std::vector<double> uniform_omegas_spacing(double K, double max_spacing) {
    if (!(max_spacing > 0.0)) throw std::invalid_argument("uniform_omegas_spacing: spacing must be positive");
    const auto count = static_cast<std::size_t>(std::ceil(K / max_spacing - 1e-12));
    return uniform_omegas(K, std::max<std::size_t>(count, 1));
}

void check_omega_grid(std::span<const double> omegas) {
    if (omegas.empty()) throw std::invalid_argument("frequency grid is empty");
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (!(omegas[i] > 0.0) || !std::isfinite(omegas[i])) {
            throw std::invalid_argument("frequency grid must be positive and finite");
        }
        if (i > 0 && !(omegas[i] > omegas[i - 1])) {
            throw std::invalid_argument("frequency grid must be strictly increasing");
        }
    }
}

BoundaryDataset boundary_data(const MediumConfig& cfg, const SourcePair& sp, std::span<const double> omegas) {
    check_omega_grid(omegas);
    sp.validate();
    const auto& grid = sp.grid;
    const auto weights = trapezoid_weights(grid.nodes());

    BoundaryDataset ds;
    ds.medium = cfg;
    ds.omegas.assign(omegas.begin(), omegas.end());
    ds.d_minus.resize(omegas.size());
    ds.d_plus.resize(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double omega = omegas[i];
        cplx minus{0.0}, plus{0.0};
        for (std::size_t j = 0; j < grid.n(); ++j) {
            if (sp.f0[j] == 0.0 && sp.f1[j] == 0.0) continue;
            const double y = grid.x(j);
            const cplx rho = weights[j] * source_density(cfg, omega, y, sp.f0[j], sp.f1[j]);
            const auto kern = boundary_kernel(cfg, omega, y);
            minus += kern.minus * rho;
            plus += kern.plus * rho;
        }
        ds.d_minus[i] = minus;
        ds.d_plus[i] = plus;
    }
    ds.refresh();
    return ds;
}

}  // namespace helmstab
