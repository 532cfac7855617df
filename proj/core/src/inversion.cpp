#include "helmstab/inversion.hpp"

#include "helmstab/quadrature.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace helmstab {

Eigen::VectorXd ForwardMatrix::pack(const SourcePair& sp) const {
    if (!(sp.grid == grid)) throw std::invalid_argument("pack: source grid does not match the forward matrix");
    const std::size_t na = active.size();
    Eigen::VectorXd x(2 * na);
    for (std::size_t p = 0; p < na; ++p) {
        x(static_cast<Eigen::Index>(p)) = sp.f0[active[p]];
        x(static_cast<Eigen::Index>(na + p)) = sp.f1[active[p]];
    }
    return x;
}

SourcePair ForwardMatrix::unpack(const Eigen::VectorXd& x) const {
    const std::size_t na = active.size();
    if (static_cast<std::size_t>(x.size()) != 2 * na) throw std::invalid_argument("unpack: wrong unknown count");
    SourcePair sp = SourcePair::zeros(grid, support_margin);
    for (std::size_t p = 0; p < na; ++p) {
        sp.f0[active[p]] = x(static_cast<Eigen::Index>(p));
        sp.f1[active[p]] = x(static_cast<Eigen::Index>(na + p));
    }
    return sp;
}

Eigen::VectorXd ForwardMatrix::data_vector(const BoundaryDataset& ds) const {
    if (ds.omegas.size() != omegas.size()) throw std::invalid_argument("data_vector: frequency grid mismatch");
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (std::abs(ds.omegas[i] - omegas[i]) > 1e-12 * std::max(1.0, omegas[i])) {
            throw std::invalid_argument("data_vector: frequency grid mismatch at index " + std::to_string(i));
        }
    }
    Eigen::VectorXd d(4 * static_cast<Eigen::Index>(omegas.size()));
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const auto r = 4 * static_cast<Eigen::Index>(i);
        d(r) = ds.d_minus[i].real();
        d(r + 1) = ds.d_minus[i].imag();
        d(r + 2) = ds.d_plus[i].real();
        d(r + 3) = ds.d_plus[i].imag();
    }
    return d;
}

BoundaryDataset ForwardMatrix::dataset(const Eigen::VectorXd& d) const {
    if (d.size() != 4 * static_cast<Eigen::Index>(omegas.size())) {
        throw std::invalid_argument("dataset: wrong data length");
    }
    BoundaryDataset ds;
    ds.medium = medium;
    ds.omegas = omegas;
    ds.d_minus.resize(omegas.size());
    ds.d_plus.resize(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const auto r = 4 * static_cast<Eigen::Index>(i);
        ds.d_minus[i] = cplx{d(r), d(r + 1)};
        ds.d_plus[i] = cplx{d(r + 2), d(r + 3)};
    }
    ds.refresh();
    return ds;
}

ForwardMatrix assemble(const MediumConfig& cfg, const SourceGrid& grid, std::span<const double> omegas,
                       double support_margin) {
    check_omega_grid(omegas);
    ForwardMatrix fm;
    fm.grid = grid;
    fm.support_margin = support_margin;
    fm.medium = cfg;
    fm.omegas.assign(omegas.begin(), omegas.end());

    const SourcePair mask = SourcePair::zeros(grid, support_margin);
    for (std::size_t j = 0; j < grid.n(); ++j) {
        if (mask.in_support(j)) fm.active.push_back(j);
    }
    if (fm.active.empty()) throw std::invalid_argument("assemble: support mask leaves no unknowns");

    const auto na = static_cast<Eigen::Index>(fm.active.size());
    const auto rows = 4 * static_cast<Eigen::Index>(omegas.size());
    fm.A.resize(rows, 2 * na);
    const double wy = grid.h();  // active nodes are interior: full trapezoid weight

    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double omega = omegas[i];
        const auto r = 4 * static_cast<Eigen::Index>(i);
        for (Eigen::Index p = 0; p < na; ++p) {
            const double y = grid.x(fm.active[static_cast<std::size_t>(p)]);
            const auto kern = boundary_kernel(cfg, omega, y);
            const cplx f0_mult = source_density(cfg, omega, y, 1.0, 0.0);
            const cplx m0 = wy * kern.minus * f0_mult;
            const cplx p0 = wy * kern.plus * f0_mult;
            const cplx m1 = -wy * kern.minus;
            const cplx p1 = -wy * kern.plus;
            fm.A(r, p) = m0.real();
            fm.A(r + 1, p) = m0.imag();
            fm.A(r + 2, p) = p0.real();
            fm.A(r + 3, p) = p0.imag();
            fm.A(r, na + p) = m1.real();
            fm.A(r + 1, na + p) = m1.imag();
            fm.A(r + 2, na + p) = p1.real();
            fm.A(r + 3, na + p) = p1.imag();
        }
    }

    const auto w = trapezoid_weights(omegas);
    fm.row_weights.resize(rows);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double s = std::sqrt(w[i]);
        fm.row_weights.segment(4 * static_cast<Eigen::Index>(i), 4).setConstant(s);
    }
    return fm;
}

namespace {

// Zero-extended difference operators on a contiguous block of na unknowns,
// scaled so that ||D x||^2 approximates the continuum L^2 integral.
Eigen::MatrixXd second_difference_operator(Eigen::Index na, double h) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(na + 2, na);
    const double s = std::sqrt(h) / (h * h);
    for (Eigen::Index r = 0; r < na + 2; ++r) {
        const Eigen::Index c = r - 1;  // centre, in unknown indices
        if (c - 1 >= 0 && c - 1 < na) D(r, c - 1) += s;
        if (c >= 0 && c < na) D(r, c) -= 2.0 * s;
        if (c + 1 >= 0 && c + 1 < na) D(r, c + 1) += s;
    }
    return D;
}

Eigen::MatrixXd first_difference_operator(Eigen::Index na, double h) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(na + 1, na);
    const double s = std::sqrt(h) / h;
    for (Eigen::Index r = 0; r < na + 1; ++r) {
        if (r < na) D(r, r) += s;
        if (r - 1 >= 0) D(r, r - 1) -= s;
    }
    return D;
}

Eigen::MatrixXd triangular_factor(const Eigen::MatrixXd& L) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(L);
    const Eigen::Index n = L.cols();
    return qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
}

}  // namespace

TikhonovSolver::TikhonovSolver(const ForwardMatrix& fm) : fm_(fm) {
    const auto na = static_cast<Eigen::Index>(fm_.active.size());
    const double h = fm_.grid.h();
    R0_ = triangular_factor(second_difference_operator(na, h));
    R1_ = triangular_factor(first_difference_operator(na, h));

    const Eigen::MatrixXd WA = fm_.row_weights.asDiagonal() * fm_.A;
    norm_ = WA.norm();

    Eigen::MatrixXd B(WA.rows(), WA.cols());
    B.leftCols(na) = R0_.transpose().triangularView<Eigen::Lower>().solve(WA.leftCols(na).transpose()).transpose();
    B.rightCols(na) = R1_.transpose().triangularView<Eigen::Lower>().solve(WA.rightCols(na).transpose()).transpose();

    Eigen::BDCSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
    U_ = svd.matrixU();
    V_ = svd.matrixV();
    sigma_ = svd.singularValues();
}

Eigen::VectorXd TikhonovSolver::project(const Eigen::VectorXd& d) const {
    if (d.size() != fm_.A.rows()) throw std::invalid_argument("tikhonov: data length does not match the matrix");
    return U_.transpose() * fm_.row_weights.cwiseProduct(d);
}

double TikhonovSolver::residual(const Eigen::VectorXd& d, double lambda) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("tikhonov: lambda must be positive");
    const Eigen::VectorXd dw = fm_.row_weights.cwiseProduct(d);
    const Eigen::VectorXd c = U_.transpose() * dw;
    const double outside = (dw - U_ * c).squaredNorm();
    const double l2 = lambda * lambda;
    double inside = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double f = l2 / (sigma_(i) * sigma_(i) + l2);
        inside += f * f * c(i) * c(i);
    }
    return std::sqrt(inside + outside);
}

TikhonovSolver::Solution TikhonovSolver::solve(const Eigen::VectorXd& d, double lambda) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("tikhonov: lambda must be positive");
    const Eigen::VectorXd c = project(d);
    const double l2 = lambda * lambda;
    Eigen::VectorXd filtered(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) filtered(i) = sigma_(i) / (sigma_(i) * sigma_(i) + l2) * c(i);
    const Eigen::VectorXd z = V_ * filtered;

    const auto na = R0_.cols();
    Solution sol;
    sol.x.resize(2 * na);
    sol.x.head(na) = R0_.triangularView<Eigen::Upper>().solve(z.head(na));
    sol.x.tail(na) = R1_.triangularView<Eigen::Upper>().solve(z.tail(na));
    sol.seminorm = z.norm();
    sol.residual = fm_.row_weights.cwiseProduct(fm_.A * sol.x - d).norm();
    return sol;
}

ReconstructionResult tikhonov_solve(const ForwardMatrix& fm, const Eigen::VectorXd& d, double lambda) {
    const TikhonovSolver solver(fm);
    const auto sol = solver.solve(d, lambda);
    ReconstructionResult res;
    res.recovered = fm.unpack(sol.x);
    res.lambda = lambda;
    res.residual = sol.residual;
    res.seminorm = sol.seminorm;
    res.iterations = 1;
    return res;
}

void InversionOptions::validate() const {
    if (!(lambda_min_factor > 0.0) || !(lambda_max_factor > lambda_min_factor) || !std::isfinite(lambda_max_factor)) {
        throw std::invalid_argument("inversion: lambda bracket must satisfy 0 < min < max (got " +
                                    std::to_string(lambda_min_factor) + ", " + std::to_string(lambda_max_factor) +
                                    ")");
    }
    if (!(noiseless_factor > 0.0)) throw std::invalid_argument("inversion: noiseless lambda factor must be positive");
    if (max_bisections < 1) throw std::invalid_argument("inversion: need at least one bisection step");
    if (!(discrepancy_tolerance > 0.0)) throw std::invalid_argument("inversion: discrepancy tolerance must be positive");
}

ReconstructionResult invert(const TikhonovSolver& solver, const BoundaryDataset& ds, double noise_level,
                            const SourcePair* truth, const InversionOptions& opts) {
    opts.validate();
    if (!(noise_level >= 0.0)) throw std::invalid_argument("invert: noise level must be >= 0");
    const auto& fm = solver.forward();
    const Eigen::VectorXd d = fm.data_vector(ds);
    const double scale = solver.matrix_norm() > 0.0 ? solver.matrix_norm() : 1.0;

    double lambda = opts.noiseless_factor * scale;
    int iterations = 0;
    bool converged = true;
    if (noise_level > 0.0) {
        // Residual is non-decreasing in lambda; bisect on log lambda.
        double lo = opts.lambda_min_factor * scale;
        double hi = opts.lambda_max_factor * scale;
        const double r_lo = solver.residual(d, lo);
        const double r_hi = solver.residual(d, hi);
        auto within = [&](double r) { return std::abs(r / noise_level - 1.0) <= opts.discrepancy_tolerance; };
        if (r_lo >= noise_level) {
            lambda = lo;
            converged = within(r_lo);
        } else if (r_hi <= noise_level) {
            lambda = hi;
            converged = within(r_hi);
        } else {
            double r = 0.0;
            for (iterations = 1; iterations <= opts.max_bisections; ++iterations) {
                lambda = std::sqrt(lo * hi);
                r = solver.residual(d, lambda);
                if (std::abs(r / noise_level - 1.0) <= 1e-3) break;
                (r < noise_level ? lo : hi) = lambda;
            }
            iterations = std::min(iterations, opts.max_bisections);
            converged = within(r);
        }
    }

    const auto sol = solver.solve(d, lambda);
    ReconstructionResult res;
    res.recovered = fm.unpack(sol.x);
    res.lambda = lambda;
    res.residual = sol.residual;
    res.seminorm = sol.seminorm;
    res.iterations = iterations;
    res.converged = converged;
    if (truth) score_against(res, *truth);
    return res;
}

ReconstructionResult invert(const MediumConfig& cfg, const SourceGrid& grid, const BoundaryDataset& ds,
                            double noise_level, const SourcePair* truth, const InversionOptions& opts) {
    const double margin = truth ? truth->support_margin : SourcePair::kDefaultMargin;
    const TikhonovSolver solver(assemble(cfg, grid, ds.omegas, margin));
    return invert(solver, ds, noise_level, truth, opts);
}

BoundaryDataset add_noise(const BoundaryDataset& ds, double target_eps2, std::uint64_t seed) {
    if (!(target_eps2 > 0.0) || !std::isfinite(target_eps2)) {
        throw std::invalid_argument("add_noise: target energy must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = ds.omegas.size();
    std::vector<cplx> nm(n), np(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = normal(rng);
        const double b = normal(rng);
        const double c = normal(rng);
        const double e = normal(rng);
        nm[i] = cplx{a, b};
        np[i] = cplx{c, e};
    }
    const double energy = data_energy(ds.omegas, nm, np);
    const double s = energy > 0.0 ? std::sqrt(target_eps2 / energy) : 0.0;

    BoundaryDataset out = ds;
    for (std::size_t i = 0; i < n; ++i) {
        out.d_minus[i] += s * nm[i];
        out.d_plus[i] += s * np[i];
    }
    out.noise_eps2 = ds.noise_eps2 + target_eps2;
    out.refresh();
    return out;
}

void score_against(ReconstructionResult& res, const SourcePair& truth) {
    if (!(truth.grid == res.recovered.grid)) throw std::invalid_argument("score: grids differ");
    const std::size_t n = truth.grid.n();
    std::vector<double> e0(n), e1(n);
    for (std::size_t j = 0; j < n; ++j) {
        e0[j] = truth.f0[j] - res.recovered.f0[j];
        e1[j] = truth.f1[j] - res.recovered.f1[j];
    }
    const double d0 = l2_norm(e0, truth.grid);
    const double d1 = l2_norm(e1, truth.grid);
    const double t0 = l2_norm(truth.f0, truth.grid);
    const double t1 = l2_norm(truth.f1, truth.grid);
    // Absolute error when the true component is zero.
    res.rel_err_f0 = t0 > 0.0 ? d0 / t0 : d0;
    res.rel_err_f1 = t1 > 0.0 ? d1 / t1 : d1;
    res.err_l2 = d0 * d0 + d1 * d1;
}

}  // namespace helmstab
