#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace helmstab {

/// Composite trapezoid rule for samples on a uniform grid of spacing h.
template <typename T>
T trapezoid(std::span<const T> values, double h) {
    if (values.size() < 2) return T{};
    T sum = 0.5 * (values.front() + values.back());
    for (std::size_t j = 1; j + 1 < values.size(); ++j) sum += values[j];
    return sum * h;
}

/// Composite trapezoid rule on an arbitrary increasing grid.
template <typename T>
T trapezoid(std::span<const double> x, std::span<const T> values) {
    if (x.size() != values.size()) throw std::invalid_argument("trapezoid: size mismatch");
    T sum{};
    for (std::size_t j = 1; j < x.size(); ++j) sum += 0.5 * (x[j] - x[j - 1]) * (values[j] + values[j - 1]);
    return sum;
}

/// Trapezoid weights for an arbitrary increasing grid (sum(w .* f) == trapezoid(x, f)).
inline std::vector<double> trapezoid_weights(std::span<const double> x) {
    std::vector<double> w(x.size(), 0.0);
    for (std::size_t j = 1; j < x.size(); ++j) {
        const double half = 0.5 * (x[j] - x[j - 1]);
        w[j - 1] += half;
        w[j] += half;
    }
    return w;
}

}  // namespace helmstab
