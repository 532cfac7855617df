#pragma once
/**
 * @file sources.hpp
 * @brief Source pairs (f0, f1) sampled on a uniform grid over [-1, 1].
 *
 * f0 models the initial displacement (H^2), f1 the initial velocity (H^1).
 * Both vanish within support_margin of the endpoints.
 */

#include <cstddef>
#include <span>
#include <vector>

namespace helmstab {

/// Uniform grid x_j = -1 + j h, h = 2 / (n - 1). n is odd so x = 0 is a node.
class SourceGrid {
public:
    static constexpr std::size_t kMinPoints = 33;

    /// Throws std::invalid_argument unless n >= 33 and n is odd.
    explicit SourceGrid(std::size_t n);

    std::size_t n() const { return n_; }
    double h() const { return h_; }
    double x(std::size_t j) const;
    std::size_t zero_index() const { return (n_ - 1) / 2; }
    std::vector<double> nodes() const;

    /// Smallest admissible odd n with at least `per_wavelength` nodes per
    /// wavelength at the wavenumber `k_max`.
    static SourceGrid resolving(double k_max, double per_wavelength = 20.0,
                                std::size_t min_n = kMinPoints);

    friend bool operator==(const SourceGrid&, const SourceGrid&) = default;

private:
    std::size_t n_;
    double h_;
};

/// Polynomial bump a (1 - s^2)^3, s = (x - center) / width, zero for |s| >= 1.
struct Bump {
    double center = 0.0;
    double width = 0.1;
    double amplitude = 1.0;
};

double bump_value(const Bump& b, double x);

struct SourcePair {
    static constexpr double kDefaultMargin = 0.1;

    SourceGrid grid{SourceGrid::kMinPoints};
    std::vector<double> f0;
    std::vector<double> f1;
    double support_margin = kDefaultMargin;

    /// Zero pair on `grid`.
    static SourcePair zeros(const SourceGrid& grid, double margin = kDefaultMargin);

    /// Throws std::invalid_argument when sizes disagree with the grid, a sample
    /// is non-finite, or a sample inside the margin is nonzero.
    void validate() const;

    /// True when node j lies strictly inside (-1 + margin, 1 - margin).
    bool in_support(std::size_t j) const;
};

/// Samples sums of bumps. Rejects bumps whose support is not contained in
/// [-1 + margin, 1 - margin].
SourcePair make_bump_pair(const SourceGrid& grid, std::span<const Bump> f0_bumps,
                          std::span<const Bump> f1_bumps,
                          double margin = SourcePair::kDefaultMargin);

struct SourceSplitting {
    std::vector<double> f1p, f1n, f0p, f0n;
};

/// Layer splitting; the x = 0 node goes to the positive part.
SourceSplitting split(const SourcePair& sp);

/// Discrete H^l norm (l in {0, 1, 2}): central differences, trapezoid L^2.
/// Second-order accurate in h for smooth samples.
double sobolev_norm(std::span<const double> f, int l, const SourceGrid& grid);

/// Plain L^2 norm of a sampled function (same as sobolev_norm with l = 0).
double l2_norm(std::span<const double> f, const SourceGrid& grid);

/// max(||f0||_(2) + ||f1||_(1), 1).
double constant_M(const SourcePair& sp);

}  // namespace helmstab
