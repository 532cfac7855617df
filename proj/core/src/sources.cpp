#include "helmstab/sources.hpp"

#include "helmstab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace helmstab {

SourceGrid::SourceGrid(std::size_t n) : n_(n), h_(0.0) {
    if (n < kMinPoints || n % 2 == 0) {
        throw std::invalid_argument("source grid: n must be odd and >= " + std::to_string(kMinPoints) +
                                    " (got " + std::to_string(n) + ")");
    }
    h_ = 2.0 / static_cast<double>(n - 1);
}

double SourceGrid::x(std::size_t j) const {
    return -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n_ - 1);
}

std::vector<double> SourceGrid::nodes() const {
    std::vector<double> xs(n_);
    for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
    return xs;
}

SourceGrid SourceGrid::resolving(double k_max, double per_wavelength, std::size_t min_n) {
    if (!(k_max > 0.0)) return SourceGrid(std::max(min_n | 1u, kMinPoints));
    const double wavelength = 2.0 * std::numbers::pi / k_max;
    const double h_max = wavelength / per_wavelength;
    auto n = static_cast<std::size_t>(std::ceil(2.0 / h_max)) + 1;
    n = std::max({n, min_n, kMinPoints});
    if (n % 2 == 0) ++n;
    return SourceGrid(n);
}

double bump_value(const Bump& b, double x) {
    const double s = (x - b.center) / b.width;
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return b.amplitude * q * q * q;
}

SourcePair SourcePair::zeros(const SourceGrid& grid, double margin) {
    SourcePair sp;
    sp.grid = grid;
    sp.f0.assign(grid.n(), 0.0);
    sp.f1.assign(grid.n(), 0.0);
    sp.support_margin = margin;
    return sp;
}

bool SourcePair::in_support(std::size_t j) const {
    return std::abs(grid.x(j)) < 1.0 - support_margin;
}

void SourcePair::validate() const {
    if (!(support_margin > 0.0) || support_margin >= 1.0) {
        throw std::invalid_argument("source pair: support margin must lie in (0, 1)");
    }
    if (f0.size() != grid.n() || f1.size() != grid.n()) {
        throw std::invalid_argument("source pair: sample count does not match grid");
    }
    for (std::size_t j = 0; j < grid.n(); ++j) {
        if (!std::isfinite(f0[j]) || !std::isfinite(f1[j])) {
            throw std::invalid_argument("source pair: non-finite sample at x=" + std::to_string(grid.x(j)));
        }
        if (!in_support(j) && (f0[j] != 0.0 || f1[j] != 0.0)) {
            throw std::invalid_argument("source pair: nonzero sample inside support margin at x=" +
                                        std::to_string(grid.x(j)));
        }
    }
}

namespace {

void check_bump(const Bump& b, double margin) {
    if (!(b.width > 0.0) || !std::isfinite(b.center) || !std::isfinite(b.amplitude)) {
        throw std::invalid_argument("bump: width must be positive and parameters finite");
    }
    if (std::abs(b.center) + b.width > 1.0 - margin) {
        throw std::invalid_argument("bump: support [" + std::to_string(b.center - b.width) + ", " +
                                    std::to_string(b.center + b.width) +
                                    "] leaves the admissible interval (margin " + std::to_string(margin) +
                                    ")");
    }
}

}  // namespace

SourcePair make_bump_pair(const SourceGrid& grid, std::span<const Bump> f0_bumps,
                          std::span<const Bump> f1_bumps, double margin) {
    for (const auto& b : f0_bumps) check_bump(b, margin);
    for (const auto& b : f1_bumps) check_bump(b, margin);

    SourcePair sp = SourcePair::zeros(grid, margin);
    for (std::size_t j = 0; j < grid.n(); ++j) {
        const double x = grid.x(j);
        for (const auto& b : f0_bumps) sp.f0[j] += bump_value(b, x);
        for (const auto& b : f1_bumps) sp.f1[j] += bump_value(b, x);
    }
    sp.validate();
    return sp;
}

SourceSplitting split(const SourcePair& sp) {
    const std::size_t n = sp.grid.n();
    SourceSplitting s;
    s.f1p.assign(n, 0.0);
    s.f1n.assign(n, 0.0);
    s.f0p.assign(n, 0.0);
    s.f0n.assign(n, 0.0);
    const std::size_t zero = sp.grid.zero_index();
    for (std::size_t j = 0; j < n; ++j) {
        if (j >= zero) {
            s.f1p[j] = sp.f1[j];
            s.f0p[j] = sp.f0[j];
        } else {
            s.f1n[j] = sp.f1[j];
            s.f0n[j] = sp.f0[j];
        }
    }
    return s;
}

namespace {

std::vector<double> first_difference(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
    return d;
}

std::vector<double> second_difference(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    const double h2 = h * h;
    std::vector<double> d(n);
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / h2;
    return d;
}

double squared_l2(std::span<const double> f, double h) {
    std::vector<double> sq(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) sq[j] = f[j] * f[j];
    return trapezoid<double>(sq, h);
}

}  // namespace

double sobolev_norm(std::span<const double> f, int l, const SourceGrid& grid) {
    if (l < 0 || l > 2) throw std::invalid_argument("sobolev_norm: order must be 0, 1 or 2");
    if (f.size() != grid.n()) throw std::invalid_argument("sobolev_norm: sample count does not match grid");
    const double h = grid.h();
    double total = squared_l2(f, h);
    if (l >= 1) total += squared_l2(first_difference(f, h), h);
    if (l >= 2) total += squared_l2(second_difference(f, h), h);
    return std::sqrt(total);
}

double l2_norm(std::span<const double> f, const SourceGrid& grid) { return sobolev_norm(f, 0, grid); }

double constant_M(const SourcePair& sp) {
    return std::max(sobolev_norm(sp.f0, 2, sp.grid) + sobolev_norm(sp.f1, 1, sp.grid), 1.0);
}

}  // namespace helmstab
