#include "helmstab/medium.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace helmstab;

TEST_CASE("medium config validates and derives c_max") {
    MediumConfig m(1.0, 1.5, 0.5);
    CHECK(m.c_max() == 1.5);
    CHECK(m.c_min() == 1.0);
    CHECK_FALSE(m.homogeneous());
    CHECK(m.with_alpha(2.0).alpha() == 2.0);
    CHECK(MediumConfig(2.0, 0.5, 0.0).c_max() == 2.0);

    CHECK_THROWS_AS(MediumConfig(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(MediumConfig(1.0, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(MediumConfig(1.0, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(MediumConfig(1.0, NAN, 0.0), std::invalid_argument);
}

TEST_CASE("kappa examples") {
    CHECK(kappa_of(1.0, 0.0).kappa == cplx(1.0, 0.0));
    CHECK(kappa_of(0.0, 5.0).kappa == cplx(0.0, 0.0));

    // (2 sqrt3 + sqrt3 i)^2 = 12 - 3 + 12 i
    const cplx expect(2.0 * std::sqrt(3.0), std::sqrt(3.0));
    CHECK(std::abs(expect * expect - cplx(9.0, 12.0)) < 1e-13);
    const auto w = kappa_of(3.0, 4.0);
    CHECK(w.k == 3.0);
    CHECK(std::abs(w.kappa - expect) < 1e-14);
}

TEST_CASE("layer wavenumbers") {
    auto lw = layer_wavenumbers(MediumConfig(1, 1, 0), 2.0);
    CHECK(lw.pos.kappa == cplx(2.0));
    CHECK(lw.neg.kappa == cplx(2.0));

    lw = layer_wavenumbers(MediumConfig(2, 1, 0), 3.0);
    CHECK(lw.pos.kappa == cplx(6.0));
    CHECK(lw.neg.kappa == cplx(3.0));

    lw = layer_wavenumbers(MediumConfig(3, 1, 4), 1.0);
    CHECK(std::abs(lw.pos.kappa - cplx(2.0 * std::sqrt(3.0), std::sqrt(3.0))) < 1e-14);
    CHECK(lw.neg.kappa == kappa_of(1.0, 4.0).kappa);

    CHECK_THROWS_AS(layer_wavenumbers(MediumConfig(), -1.0), std::invalid_argument);
}

TEST_CASE("kappa branch, dissipation and modulus bound") {
    for (double k = 1e-3; k < 200.0; k *= 1.37) {
        double prev_im = -1.0;
        for (double alpha = 0.0; alpha <= 10.0; alpha += 0.25) {
            const cplx kap = kappa_of(k, alpha).kappa;
            const cplx target(k * k, alpha * k);
            CHECK(std::abs(kap * kap - target) <= 1e-12 * (k * k + alpha * k));
            CHECK(kap.real() >= 0.0);
            CHECK(kap.imag() >= 0.0);
            CHECK(kap.imag() >= prev_im);
            prev_im = kap.imag();
            CHECK(std::abs(kap) <= 2.0 * std::sqrt(k) * std::sqrt(k + alpha));
        }
    }
}

TEST_CASE("kappa is continuous in k") {
    const double alpha = 1.5;
    cplx prev = kappa_of(1e-6, alpha).kappa;
    for (double k = 1e-6; k < 50.0; k += 1e-3) {
        const cplx cur = kappa_of(k, alpha).kappa;
        CHECK(std::abs(cur - prev) < 0.05);
        prev = cur;
    }
}
