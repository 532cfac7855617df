#include "helmstab/greens.hpp"
#include "helmstab/io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

using namespace helmstab;

namespace {

cplx free_space(cplx kappa, double x, double y) {
    return cplx(0, 1) / (2.0 * kappa) * std::exp(cplx(0, 1) * kappa * std::abs(x - y));
}

// Finite-difference solve of u'' + kappa(x)^2 u = s on [-1, 1] with the
// exact outgoing conditions u' = i kappa_p u at 1 and u' = -i kappa_n u at -1.
// Independent of the Green representation; used to pin down its sign.
std::vector<cplx> fd_solve(const MediumConfig& cfg, double omega, const SourcePair& sp) {
    const auto& g = sp.grid;
    const std::size_t n = g.n();
    const double h = g.h();
    const auto lw = layer_wavenumbers(cfg, omega);
    const cplx kp2 = lw.pos.kappa * lw.pos.kappa, kn2 = lw.neg.kappa * lw.neg.kappa;
    const cplx I(0, 1);

    std::vector<cplx> lower(n), diag(n), upper(n), rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = g.x(j);
        const cplx k2 = j == g.zero_index() ? 0.5 * (kp2 + kn2) : (x > 0 ? kp2 : kn2);
        lower[j] = upper[j] = 1.0 / (h * h);
        diag[j] = -2.0 / (h * h) + k2;
        rhs[j] = source_density(cfg, omega, x, sp.f0[j], sp.f1[j]);
    }
    // ghost nodes from the radiation conditions
    upper[0] = 2.0 / (h * h);
    diag[0] += 2.0 * h * I * lw.neg.kappa / (h * h);
    lower[n - 1] = 2.0 / (h * h);
    diag[n - 1] += 2.0 * h * I * lw.pos.kappa / (h * h);

    for (std::size_t j = 1; j < n; ++j) {
        const cplx m = lower[j] / diag[j - 1];
        diag[j] -= m * upper[j - 1];
        rhs[j] -= m * rhs[j - 1];
    }
    std::vector<cplx> u(n);
    u[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) u[j] = (rhs[j] - upper[j] * u[j + 1]) / diag[j];
    return u;
}

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

TEST_CASE("green rejects non-positive frequency") {
    CHECK_THROWS_AS(green(MediumConfig(), 0.0, 0.1, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(green(MediumConfig(), -1.0, 0.1, 0.2), std::invalid_argument);
}

TEST_CASE("homogeneous reduction") {
    const cplx g = green(MediumConfig(1, 1, 0), 1.0, 0.3, 0.7);
    CHECK(std::abs(g - 0.5 * cplx(0, 1) * std::exp(cplx(0, 0.4))) < 1e-15);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(-1.0, 1.0), freq(0.05, 40.0);
    for (double c : {0.5, 1.0, 2.0}) {
        for (double alpha : {0.0, 1.0, 3.0}) {
            const MediumConfig cfg(c, c, alpha);
            for (int s = 0; s < 300; ++s) {
                const double x = pos(rng), y = pos(rng), w = freq(rng);
                const cplx G = green(cfg, w, x, y);
                const cplx ref = free_space(kappa_of(c * w, alpha).kappa, x, y);
                CHECK(std::abs(G - ref) <= 1e-12 * std::abs(G));
            }
        }
    }
}

TEST_CASE("interface continuity and the transmitted value") {
    const double below = std::nextafter(0.0, -1.0);
    for (double alpha : {0.0, 0.5, 2.0}) {
        const MediumConfig cfg(1.0, 1.7, alpha);
        for (double w : {0.3, 2.0, 9.0}) {
            const auto lw = layer_wavenumbers(cfg, w);
            for (double y : {-0.8, -0.2, 0.1, 0.5, 0.9}) {
                const cplx above = green(cfg, w, 0.0, y);
                CHECK(std::abs(above - green(cfg, w, below, y)) <= 1e-12 * std::abs(above));
            }
            const cplx at = green(cfg, w, 0.0, 0.5);
            const cplx expect = cplx(0, 1) / (lw.pos.kappa + lw.neg.kappa) * std::exp(cplx(0, 1) * lw.pos.kappa * 0.5);
            CHECK(std::abs(at - expect) <= 1e-13 * std::abs(expect));
        }
    }
}

TEST_CASE("mirror symmetry swaps the layers") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(-1.0, 1.0), freq(0.1, 20.0);
    for (double alpha : {0.0, 1.5}) {
        const MediumConfig a(0.8, 2.1, alpha), b(2.1, 0.8, alpha);
        for (int s = 0; s < 200; ++s) {
            const double x = pos(rng), y = pos(rng), w = freq(rng);
            const cplx lhs = green(a, w, x, y), rhs = green(b, w, -x, -y);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
        }
    }
}

TEST_CASE("green is symmetric in its own layer and continuous across x = y") {
    const MediumConfig cfg(1.3, 0.7, 0.9);
    for (double y : {-0.6, 0.4}) {
        const double eps = 1e-9;
        const cplx l = green(cfg, 3.0, y - eps, y), r = green(cfg, 3.0, y + eps, y);
        CHECK(std::abs(l - r) < 1e-7);
    }
}

TEST_CASE("forward field of the homogeneous lossless case matches direct convolution") {
    // u(x) = i/(2w) int e^{i w |x - y|} (-f1(y)) dy, integrand evaluated from the
    // analytic bump with Simpson on a much finer grid
    const Bump b{0.2, 0.4, 1.0};
    SourceGrid g(1025);
    const std::vector<Bump> b1{b};
    const auto sp = make_bump_pair(g, {}, b1);
    const MediumConfig cfg(1, 1, 0);
    for (double w : {0.5, 3.0, 8.0}) {
        for (double x : {-1.0, -0.3, 0.25, 1.0}) {
            const int m = 40000;
            const double a = b.center - b.width, hh = 2.0 * b.width / m;
            cplx sum{0.0};
            for (int i = 0; i <= m; ++i) {
                const double y = a + i * hh;
                const double wt = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                sum += wt * std::exp(cplx(0, w * std::abs(x - y))) * (-bump_value(b, y));
            }
            const cplx ref = cplx(0, 1) / (2.0 * w) * sum * hh / 3.0;
            const cplx got = forward_field(cfg, sp, w, x);
            // |u| <= int |f1| / (2 w) < 0.2 / w; trapezoid error O((w h)^2)
            CHECK(std::abs(got - ref) <= 0.2 / w * (w * g.h()) * (w * g.h()));
        }
    }
}

TEST_CASE("finite-difference oracle fixes the source sign") {
    SourceGrid g(4097);
    const auto sp = helmstab::testing::straddling(g);
    for (const MediumConfig cfg : {MediumConfig(1, 1, 0), MediumConfig(1, 1.5, 0.5), MediumConfig(2, 0.7, 1.0)}) {
        for (double w : {1.0, 4.0}) {
            const auto u_fd = fd_solve(cfg, w, sp);
            std::vector<cplx> u_rep(g.n());
            for (std::size_t j = 0; j < g.n(); j += 16) u_rep[j] = forward_field(cfg, sp, w, g.x(j));
            // least-squares scalar between the two, expected to be the sign
            cplx num{0.0};
            double den = 0.0;
            std::vector<cplx> diff;
            for (std::size_t j = 0; j < g.n(); j += 16) {
                num += std::conj(u_fd[j]) * u_rep[j];
                den += std::norm(u_fd[j]);
            }
            const cplx sigma = num / den;
            CHECK(std::abs(sigma - kSourceSign) < 2e-3);
            for (std::size_t j = 0; j < g.n(); j += 16) diff.push_back(u_rep[j] - kSourceSign * u_fd[j]);
            CHECK(max_abs(diff) <= 2e-3 * max_abs(u_fd));
        }
    }
}

TEST_CASE("forward field is linear") {
    SourceGrid g(257);
    auto sp = helmstab::testing::straddling(g);
    const MediumConfig cfg(1, 1.4, 0.6);
    const cplx base = forward_field(cfg, sp, 2.5, 0.3);
    for (double& v : sp.f0) v *= 2.0;
    for (double& v : sp.f1) v *= 2.0;
    CHECK(std::abs(forward_field(cfg, sp, 2.5, 0.3) - 2.0 * base) < 1e-14 * std::abs(base));
    CHECK(forward_field(cfg, SourcePair::zeros(g), 2.5, 0.3) == cplx(0.0));
}

TEST_CASE("boundary data agrees with the forward field at the endpoints") {
    SourceGrid g(513);
    const auto sp = helmstab::testing::straddling(g);
    const auto omegas = uniform_omegas(12.0, 24);
    for (const MediumConfig cfg : {MediumConfig(1, 1, 0), MediumConfig(1, 1, 1), MediumConfig(1, 1.5, 0.5),
                                   MediumConfig(0.6, 2.0, 2.0)}) {
        const auto ds = boundary_data(cfg, sp, omegas);
        for (std::size_t i = 0; i < omegas.size(); ++i) {
            const double w = omegas[i];
            const cplx fm = w * forward_field(cfg, sp, w, -1.0);
            const cplx fp = w * forward_field(cfg, sp, w, 1.0);
            CHECK(std::abs(ds.d_minus[i] - fm) <= 1e-8 * std::max(1.0, std::abs(fm)));
            CHECK(std::abs(ds.d_plus[i] - fp) <= 1e-8 * std::max(1.0, std::abs(fp)));
        }
    }
}

TEST_CASE("boundary data from one-sided sources") {
    SourceGrid g(257);
    const std::vector<Bump> right{{0.5, 0.3, 1.0}};
    const auto sp = make_bump_pair(g, right, right);
    const MediumConfig cfg(1.0, 2.0, 0.7);
    for (double w : {0.7, 3.0}) {
        const auto lw = layer_wavenumbers(cfg, w);
        cplx expect{0.0};
        for (std::size_t j = 0; j < g.n(); ++j) {
            const double y = g.x(j);
            if (sp.f0[j] == 0.0 && sp.f1[j] == 0.0) continue;
            // transmitted wave only: i/(kp + kn) e^{i(kp y + kn)}
            expect += g.h() * w * cplx(0, 1) / (lw.pos.kappa + lw.neg.kappa) *
                      std::exp(cplx(0, 1) * (lw.pos.kappa * y + lw.neg.kappa)) *
                      source_density(cfg, w, y, sp.f0[j], sp.f1[j]);
        }
        const std::vector<double> om{w};
        const auto ds = boundary_data(cfg, sp, om);
        CHECK(std::abs(ds.d_minus[0] - expect) <= 1e-12 * std::abs(expect));
    }
}

TEST_CASE("dataset energy and E") {
    SourceGrid g(129);
    const auto zero = boundary_data(MediumConfig(), SourcePair::zeros(g), uniform_omegas(5.0, 10));
    CHECK(zero.epsilon2 == 0.0);
    CHECK_FALSE(zero.E().has_value());
    for (std::size_t i = 0; i < zero.omegas.size(); ++i) CHECK((zero.d_minus[i] == cplx(0) && zero.d_plus[i] == cplx(0)));

    BoundaryDataset ds;
    ds.omegas = {1.0, 2.0, 3.0};
    ds.d_minus = {cplx(0.01, 0), cplx(0, 0.02), cplx(0.01, 0.01)};
    ds.d_plus = {cplx(0), cplx(0), cplx(0.03, 0)};
    ds.refresh();
    // trapezoid of {1e-4, 4e-4, 2e-4 + 9e-4} with unit spacing
    CHECK(ds.epsilon2 == doctest::Approx(0.5 * 1e-4 + 4e-4 + 0.5 * 11e-4));
    CHECK(ds.K == 3.0);
    CHECK(*ds.E() == doctest::Approx(-std::log(std::sqrt(ds.epsilon2))));

    ds.d_plus[2] = cplx(10.0);
    ds.refresh();
    CHECK_FALSE(ds.E().has_value());
}

TEST_CASE("omega grids") {
    const auto om = uniform_omegas(10.0, 4);
    REQUIRE(om.size() == 4);
    CHECK(om[0] == 2.5);
    CHECK(om[3] == 10.0);
    const auto sp = uniform_omegas_spacing(10.0, 0.3);
    CHECK(sp.back() == doctest::Approx(10.0));
    CHECK(sp[1] - sp[0] <= 0.3);
    const std::vector<double> bad{1.0, 1.0};
    CHECK_THROWS_AS(check_omega_grid(bad), std::invalid_argument);
    const std::vector<double> neg{-1.0, 1.0};
    CHECK_THROWS_AS(check_omega_grid(neg), std::invalid_argument);
    CHECK_THROWS_AS(check_omega_grid(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("dataset csv round trip") {
    SourceGrid g(129);
    const MediumConfig cfg(1, 1.5, 0.5);
    const auto ds = boundary_data(cfg, helmstab::testing::two_bump(g), uniform_omegas(6.0, 12));
    std::stringstream ss;
    io::write_dataset_csv(ss, ds, "h");
    const auto back = io::read_dataset_csv(ss, cfg);
    CHECK(back.omegas == ds.omegas);
    CHECK(back.d_minus == ds.d_minus);
    CHECK(back.d_plus == ds.d_plus);
    CHECK(back.epsilon2 == ds.epsilon2);
}
