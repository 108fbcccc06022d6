#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cylvdw/errors.hpp"
#include "cylvdw/numerics.hpp"
#include "cylvdw/specfun.hpp"

using namespace cylvdw;
using namespace cylvdw::specfun;

namespace {

struct RefRow {
    double x, y, j0r, j0i, j1r, j1i, h0r, h0i, h1r, h1i;
};

const RefRow reference[] = {
#include "data/bessel_reference.inc"
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("scaled values match the high-precision table")
{
    int checked = 0;
    for (const auto& r : reference) {
        const cplx z(r.x, r.y);
        const Pair j = bessel_j_scaled(z);
        // relative to the pair magnitude near zeros of a single order
        const double sj = std::abs(cplx(r.j0r, r.j0i)) + std::abs(cplx(r.j1r, r.j1i));
        CHECK(std::abs(j.v0 - cplx(r.j0r, r.j0i)) <= 1e-10 * sj);
        CHECK(std::abs(j.v1 - cplx(r.j1r, r.j1i)) <= 1e-10 * sj);
        if (z.imag() < 0.0 && z.real() <= 0.0) continue;
        const Pair h = hankel1_scaled(z);
        const double sh = std::abs(cplx(r.h0r, r.h0i)) + std::abs(cplx(r.h1r, r.h1i));
        CHECK(std::abs(h.v0 - cplx(r.h0r, r.h0i)) <= 1e-10 * sh);
        CHECK(std::abs(h.v1 - cplx(r.h1r, r.h1i)) <= 1e-10 * sh);
        ++checked;
    }
    CHECK(checked > 260);
}

TEST_CASE("Wronskian and derivative recurrence at random points")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lr(-3.0, 2.0), ang(-0.75 * pi, 0.75 * pi);
    int wr = 0;
    for (int i = 0; i < 1000; ++i) {
        const cplx z = std::polar(std::pow(10.0, lr(rng)), ang(rng));
        const Pair j = bessel_j_scaled(z);
        CHECK(rel(bessel_j_prime(0, z), -bessel_j(1, z)) <= 1e-12);
        if (z.imag() < 0.0 && z.real() <= 0.0) continue;
        const Pair h = hankel1_scaled(z);
        // J1 H0 - J0 H1 = 2i/(pi z), both sides scaled by e^{-|Im z|} e^{-iz}
        const cplx lhs = j.v1 * h.v0 - j.v0 * h.v1;
        const cplx rhs = 2.0 * cplx(0.0, 1.0) / (pi * z) * std::exp(cplx(-std::abs(z.imag()), 0.0) - cplx(0.0, 1.0) * z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(j.v1 * h.v0) + std::abs(j.v0 * h.v1)));
        CHECK(rel(hankel1_prime(0, z), -hankel1(1, z)) <= 1e-12);
        ++wr;
    }
    CHECK(wr > 800);
}

TEST_CASE("conjugate symmetry of J")
{
    for (cplx z : {cplx(0.3, 0.7), cplx(5.0, 2.0), cplx(17.0, -3.0), cplx(40.0, 11.0), cplx(-8.0, 1.5)}) {
        CHECK(rel(bessel_j(0, std::conj(z)), std::conj(bessel_j(0, z))) <= 1e-13);
        CHECK(rel(bessel_j(1, std::conj(z)), std::conj(bessel_j(1, z))) <= 1e-13);
    }
}

TEST_CASE("methods agree across the switchover radii")
{
    for (double a = 0.0; a <= 0.5 * pi + 1e-12; a += pi / 16) {
        const cplx z12 = std::polar(j_series_radius, a);
        const cplx z25 = std::polar(asymptotic_radius, a);
        const cplx z2 = std::polar(h_series_radius, a);
        const Pair s = method::j_series(z12), r = method::j_ratio(z12);
        CHECK(std::abs(s.v0 - r.v0) <= 1e-8 * std::abs(r.v0) + 1e-12);
        CHECK(std::abs(s.v1 - r.v1) <= 1e-8 * std::abs(r.v1) + 1e-12);
        const Pair r2 = method::j_ratio(z25), a2 = method::j_asymptotic(z25);
        CHECK(std::abs(r2.v0 - a2.v0) <= 1e-8 * (std::abs(a2.v0) + std::abs(a2.v1)));
        CHECK(std::abs(r2.v1 - a2.v1) <= 1e-8 * (std::abs(a2.v0) + std::abs(a2.v1)));
        const Pair hs = method::h_series(z2), ht = method::h_steed(z2);
        CHECK(rel(hs.v0, ht.v0) <= 1e-8);
        CHECK(rel(hs.v1, ht.v1) <= 1e-8);
        const Pair ht2 = method::h_steed(z25), ha = method::h_asymptotic(z25);
        CHECK(rel(ht2.v0, ha.v0) <= 1e-8);
        CHECK(rel(ht2.v1, ha.v1) <= 1e-8);
    }
}

TEST_CASE("reference points")
{
    CHECK(std::abs(bessel_j(0, 2.404825557695773)) <= 1e-10);
    // J0(iy) = I0(y)
    const cplx i1 = bessel_j(0, cplx(0.0, 1.0)), i2 = bessel_j(0, cplx(0.0, 2.0));
    CHECK(i1.real() == doctest::Approx(1.2660658777520082).epsilon(1e-13));
    CHECK(i2.real() == doctest::Approx(2.2795853023360673).epsilon(1e-13));
    CHECK(std::abs(i1.imag()) <= 1e-15);
    CHECK(bessel_j_prime(1, 0.0).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(bessel_j_prime(1, 1.8411837813)) <= 1e-9);
    CHECK(std::abs(log_deriv_j(1, 1.8411837813)) <= 1e-9);
    const double q = numerics::bessel_zero(numerics::ZeroKind::j_prime, 1, 1).value;
    CHECK(log_deriv_j(1, q - 1e-3).real() > 0.0);
    CHECK(log_deriv_j(1, q + 1e-3).real() < 0.0);
}

TEST_CASE("large-argument phase is -pi/4")
{
    for (double x : {30.0, 100.0, 1000.0, 5000.0}) {
        const cplx v = hankel1(0, x) * std::sqrt(pi * x / 2.0) * std::exp(cplx(0.0, -(x - pi / 4.0)));
        CHECK(std::abs(v - 1.0) <= 0.2 / x);
    }
}

TEST_CASE("Hankel function decays along the imaginary axis")
{
    double prev = std::abs(hankel1(0, cplx(0.0, 1.0)));
    for (double y = 1.5; y <= 40.0; y += 0.5) {
        const double v = std::abs(hankel1(0, cplx(0.0, y)));
        CHECK(v < prev);
        prev = v;
    }
    // H0(iy) = -(2i/pi) K0(y), K0(1) = 0.42102443824070834
    CHECK(rel(hankel1(0, cplx(0.0, 1.0)), cplx(0.0, -2.0 / pi * 0.42102443824070834)) <= 1e-12);
}

TEST_CASE("errors")
{
    CHECK_THROWS_AS(log_deriv_j(0, 2.404825557695773), PoleError);
    CHECK_THROWS_AS(hankel1(0, 0.0), DomainError);
    CHECK_THROWS_AS(hankel1_scaled(cplx(-1.0, -1.0)), DomainError);
    CHECK_THROWS_AS(bessel_j(0, cplx(2e6, 0.0)), DomainError);
}
