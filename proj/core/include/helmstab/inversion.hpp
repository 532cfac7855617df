#pragma once
/**
 * @file inversion.hpp
 * @brief Tikhonov reconstruction of (f0, f1) from band-limited boundary data.
 *
 * Data and unknowns are real-stacked: per frequency the rows are
 * Re d(-1), Im d(-1), Re d(1), Im d(1); the columns are the f0 node values on
 * the support mask followed by the f1 node values. Rows are weighted by the
 * square roots of the frequency trapezoid weights, so the weighted residual
 * norm squared is the same functional as the data energy epsilon^2.
 *
 * The penalty is lambda^2 (||D2 f0||^2 + ||D1 f1||^2) on the zero-extended
 * unknowns. It is transformed to standard form once and the resulting matrix
 * is factored by an SVD, so a regularization path costs O(rows * cols).
 */

#include "helmstab/greens.hpp"
#include "helmstab/medium.hpp"
#include "helmstab/sources.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace helmstab {

struct ForwardMatrix {
    Eigen::MatrixXd A;                  ///< 4 * omegas.size() x 2 * active.size()
    std::vector<std::size_t> active;    ///< grid indices of the unknowns (contiguous)
    SourceGrid grid{SourceGrid::kMinPoints};
    double support_margin = SourcePair::kDefaultMargin;
    std::vector<double> omegas;
    Eigen::VectorXd row_weights;        ///< sqrt of the omega trapezoid weight per row
    MediumConfig medium;

    std::size_t unknowns() const { return 2 * active.size(); }

    /// Unknown vector of a source pair (values on the mask).
    Eigen::VectorXd pack(const SourcePair& sp) const;
    /// Source pair with zeros outside the mask.
    SourcePair unpack(const Eigen::VectorXd& x) const;
    /// Real-stacked, unweighted data vector of a dataset on the same omegas.
    Eigen::VectorXd data_vector(const BoundaryDataset& ds) const;
    /// Inverse of data_vector.
    BoundaryDataset dataset(const Eigen::VectorXd& d) const;
};

ForwardMatrix assemble(const MediumConfig& cfg, const SourceGrid& grid, std::span<const double> omegas,
                       double support_margin = SourcePair::kDefaultMargin);

struct ReconstructionResult {
    SourcePair recovered;
    double lambda = 0.0;
    double residual = 0.0;       ///< weighted ||A x - d||
    double seminorm = 0.0;       ///< sqrt(||D2 f0||^2 + ||D1 f1||^2)
    std::optional<double> rel_err_f0;
    std::optional<double> rel_err_f1;
    std::optional<double> err_l2;///< ||f0 - f0^||_(0)^2 + ||f1 - f1^||_(0)^2
    int iterations = 0;
    bool converged = true;       ///< false when lambda selection hit its limits
};

/// Standard-form Tikhonov factorization of one forward matrix.
class TikhonovSolver {
public:
    explicit TikhonovSolver(const ForwardMatrix& fm);

    const ForwardMatrix& forward() const { return fm_; }
    /// Frobenius norm of the weighted forward matrix (scale for lambda).
    double matrix_norm() const { return norm_; }

    struct Solution {
        Eigen::VectorXd x;
        double residual = 0.0;
        double seminorm = 0.0;
    };
    /// Throws std::invalid_argument for lambda <= 0.
    Solution solve(const Eigen::VectorXd& d, double lambda) const;
    /// Weighted residual norm at lambda without forming x.
    double residual(const Eigen::VectorXd& d, double lambda) const;

private:
    Eigen::VectorXd project(const Eigen::VectorXd& d) const;

    ForwardMatrix fm_;
    Eigen::MatrixXd R0_, R1_;    // upper triangular penalty factors, f0 and f1 blocks
    Eigen::MatrixXd U_, V_;
    Eigen::VectorXd sigma_;
    double norm_ = 0.0;
};

/// One-shot solve of min ||W(A x - d)||^2 + lambda^2 ||L x||^2.
ReconstructionResult tikhonov_solve(const ForwardMatrix& fm, const Eigen::VectorXd& d, double lambda);

struct InversionOptions {
    double lambda_min_factor = 1e-12;   ///< bracket, relative to matrix_norm()
    double lambda_max_factor = 1e4;
    double noiseless_factor = 1e-8;     ///< lambda / matrix_norm() when noise_level == 0
    int max_bisections = 60;
    double discrepancy_tolerance = 0.1; ///< accepted |residual / noise - 1|

    /// Throws std::invalid_argument on an empty or non-positive bracket.
    void validate() const;
};

/// Discrepancy-principle driver: picks lambda so the residual matches
/// noise_level (a norm, i.e. sqrt of the injected noise energy).
ReconstructionResult invert(const TikhonovSolver& solver, const BoundaryDataset& ds, double noise_level,
                            const SourcePair* truth = nullptr, const InversionOptions& opts = {});

ReconstructionResult invert(const MediumConfig& cfg, const SourceGrid& grid, const BoundaryDataset& ds,
                            double noise_level, const SourcePair* truth = nullptr,
                            const InversionOptions& opts = {});

/// Adds complex Gaussian noise whose energy (same functional as epsilon^2)
/// equals target_eps2 exactly. Deterministic for a given seed.
BoundaryDataset add_noise(const BoundaryDataset& ds, double target_eps2, std::uint64_t seed);

/// Fills rel_err_f0, rel_err_f1 and err_l2 of `res` against `truth`.
void score_against(ReconstructionResult& res, const SourcePair& truth);

}  // namespace helmstab
