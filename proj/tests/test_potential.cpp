#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cylvdw/errors.hpp"
#include "cylvdw/guided_modes.hpp"
#include "cylvdw/numerics.hpp"
#include "cylvdw/pec_modesum.hpp"
#include "cylvdw/potential.hpp"

using namespace cylvdw;
using namespace cylvdw::potential;
using materials::Constant;

namespace {

const double W = wavelength_to_omega(780e-9);
const double L = si::c / W;

Emitter emitter(Orientation o = Orientation::axial)
{
    Emitter e;
    e.omega = W;
    e.orientation = o;
    return e;
}

greens::Geometry pec_tube(double rw = 0.8) { return {rw * L, Constant{1.0}, materials::PerfectConductor{}}; }

double alpha0(const Emitter& e) { return 2.0 * e.dipole * e.dipole / (si::hbar * e.omega); }

double slope(double z1, double z2, double u1, double u2) { return std::log(u2 / u1) / std::log(z2 / z1); }

}  // namespace

TEST_CASE("polarizability")
{
    const Emitter e = emitter();
    CHECK(polarizability(e, 0.0).real() == doctest::Approx(alpha0(e)).epsilon(1e-14));
    CHECK(polarizability(e, cplx(0.0, W)).real() == doctest::Approx(0.5 * alpha0(e)).epsilon(1e-14));
    double prev = alpha0(e) * 1.0001;
    for (double t = -2.0; t <= 2.0; t += 0.1) {
        const cplx a = polarizability(e, cplx(0.0, std::pow(10.0, t) * W));
        CHECK(a.imag() == 0.0);
        CHECK(a.real() > 0.0);
        CHECK(a.real() < prev);
        prev = a.real();
    }
    CHECK_THROWS_AS(polarizability(e, W), PoleError);
    CHECK_NOTHROW(polarizability(e, W, 1e-6 * W));
    const double ai = numerics::integrate_semiinfinite([&](double xi) { return std::pow(polarizability(e, cplx(0.0, xi)).real(), 2); }, W, {1e-12}).value;
    CHECK(alpha_squared_integral(e) == doctest::Approx(ai).epsilon(1e-10));
}

TEST_CASE("free-space limits")
{
    for (Orientation o : {Orientation::axial, Orientation::radial}) {
        const Emitter e = emitter(o);
        const Constant vac{1.0};
        // r^-6 and r^-7 power laws
        CHECK(slope(1e-3, 1e-2, free_space_potential(1e-3 * L, vac, e), free_space_potential(1e-2 * L, vac, e)) ==
              doctest::Approx(-6.0).epsilon(1e-4));
        // alpha(i xi) is not yet static at xi ~ c/z: -6.989
        CHECK(slope(20.0, 100.0, free_space_potential(20.0 * L, vac, e), free_space_potential(100.0 * L, vac, e)) ==
              doctest::Approx(-7.0).epsilon(3e-3));
        for (double x : {1e-3, 0.3, 3.0, 30.0}) CHECK(free_space_potential(x * L, vac, e) < 0.0);
    }
    // non-retarded closed form (axial)
    const Emitter ez = emitter();
    const double ai = alpha_squared_integral(ez);
    CHECK(free_space_potential(1e-3 * L, Constant{1.0}, ez) == doctest::Approx(pec::uzz_free_nonretarded(1e-3 * L, ai)).epsilon(1e-5));
    // retarded closed forms: static alpha, 20/128 (along the axis) and 13/128 (transverse)
    const double z = 2000.0 * L, a0 = alpha0(ez);
    const double unit = si::hbar * si::c * a0 * a0 / (128.0 * std::pow(pi, 3) * si::eps0 * si::eps0 * std::pow(z, 7));
    CHECK(free_space_potential(z, Constant{1.0}, ez) == doctest::Approx(-20.0 * unit).epsilon(1e-4));
    CHECK(free_space_potential(z, Constant{1.0}, emitter(Orientation::radial)) == doctest::Approx(-13.0 * unit).epsilon(1e-4));
}

TEST_CASE("retardation knee moves with the medium")
{
    const Emitter e = emitter();
    auto knee = [&](double eps) {
        for (double t = -2.0; t < 2.0; t += 0.005) {
            const double x = std::pow(10.0, t);
            const double s = slope(x, 1.01 * x, free_space_potential(x * L, Constant{eps}, e), free_space_potential(1.01 * x * L, Constant{eps}, e));
            if (s < -6.5) return x;
        }
        return 0.0;
    };
    const double k1 = knee(1.0), k4 = knee(4.0), k13 = knee(13.5);
    CHECK(k4 < k1);
    CHECK(k13 < k4);
    // onset at z sqrt(eps) Omega/c of order one
    for (auto [k, eps] : {std::pair{k1, 1.0}, {k4, 4.0}, {k13, 13.5}}) {
        CHECK(k * std::sqrt(eps) > 1.0);
        CHECK(k * std::sqrt(eps) < 2.0);
    }
    CHECK(k4 * 2.0 == doctest::Approx(k1).epsilon(0.02));
}

TEST_CASE("decomposition identity and normalization")
{
    const greens::Geometry si{0.8 * L, materials::preset("silicon-undoped").model, Constant{1.0}};
    for (const greens::Geometry& g : {pec_tube(), si}) {
        for (Orientation o : {Orientation::axial, Orientation::radial}) {
            const Emitter e = emitter(o);
            for (double x : {0.3, 1.0, 3.0, 6.0}) {
                const PotentialBreakdown b = vdw_potential(x * g.radius, g, e);
                const double scale = std::abs(b.U0) + std::abs(b.Usc) + 2.0 * std::abs(b.Ucross);
                CHECK(std::abs(b.U0 + b.Usc + 2.0 * b.Ucross - b.Utotal) <= 1e-6 * scale);
                CHECK(b.U0 < 0.0);
                CHECK(b.Ufree == doctest::Approx(free_space_potential(x * g.radius, g.core, e)).epsilon(1e-12));
                const PotentialBreakdown n = vdw_potential(x * g.radius, g, e, false);
                CHECK(std::isnan(n.U0));
                CHECK(n.Utotal == doctest::Approx(b.Utotal).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("homogeneous cylinder is invisible")
{
    const greens::Geometry g{0.8 * L, Constant{2.0}, Constant{2.0}};
    for (Orientation o : {Orientation::axial, Orientation::radial}) {
        for (double x : {0.2, 1.0, 4.0}) {
            const PotentialBreakdown b = vdw_potential(x * L, g, emitter(o));
            CHECK(std::abs(b.Usc) + std::abs(b.Ucross) <= 1e-8 * std::abs(b.U0));
            CHECK(b.normalized() == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("perfect-conductor tube")
{
    const greens::Geometry g = pec_tube();
    bool enhanced = false;
    for (double x = 0.1; x <= 8.0 + 1e-9; x += 0.1) {
        const PotentialBreakdown a = vdw_potential(x * g.radius, g, emitter(Orientation::axial));
        const PotentialBreakdown r = vdw_potential(x * g.radius, g, emitter(Orientation::radial));
        if (a.normalized() > 1.0) enhanced = true;
        CHECK(r.normalized() <= 1.0);
        if (x > 3.0) {
            CHECK(std::abs(a.Utotal) < 0.1 * std::abs(a.U0));
            CHECK(std::abs(r.Utotal) < 0.1 * std::abs(r.U0));
        }
    }
    CHECK(enhanced);
    CHECK(vdw_potential(1.0 * g.radius, g, emitter()).normalized() > 1.0);
}

TEST_CASE("PEC tail decay lengths")
{
    const greens::Geometry g = pec_tube();
    std::vector<double> z, ua, ur;
    for (double x = 3.0; x <= 8.0 + 1e-9; x += 0.25) {
        z.push_back(x * g.radius);
        ua.push_back(vdw_potential(x * g.radius, g, emitter(Orientation::axial), false).normalized());
        ur.push_back(vdw_potential(x * g.radius, g, emitter(Orientation::radial), false).normalized());
    }
    const TailFit fa = fit_exponential_tail(z, ua, g.radius, 3.0 * g.radius, 8.0 * g.radius, TailModel::power6);
    const TailFit fr = fit_radial_tail(z, ur, g.radius, 3.0 * g.radius, 8.0 * g.radius);
    // TM01 (p01) against TE11 (q11 < p01)
    CHECK(fa.decay_length < fr.decay_length);
    CHECK(fa.decay_length / g.radius == doctest::Approx(1.0 / (2.0 * pec::p01())).epsilon(0.05));
    CHECK(fa.effective_radius / g.radius == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("tail fits on synthetic curves")
{
    const double R = 1e-7;
    std::vector<double> z, u6, ue, up;
    for (double x = 2.0; x <= 6.0 + 1e-9; x += 0.2) {
        z.push_back(x * R);
        u6.push_back(pec::uzz_suppression_ratio(x));
        ue.push_back(0.37 * std::exp(-x * R / (0.3 * R)));
        up.push_back(2.0 * std::pow(x, 4.5) * std::exp(-x / 0.25));
    }
    const TailFit f6 = fit_exponential_tail(z, u6, R, 2.0 * R, 6.05 * R, TailModel::power6);
    CHECK(f6.effective_radius / R == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f6.residual < 1e-10);
    CHECK(f6.samples == z.size());
    const TailFit fe = fit_exponential_tail(z, ue, R, 2.0 * R, 6.05 * R, TailModel::pure_exponential);
    CHECK(fe.decay_length / R == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(fe.prefactor == doctest::Approx(0.37).epsilon(1e-9));
    CHECK(fe.effective_radius == doctest::Approx(2.0 * pec::p01() * fe.decay_length).epsilon(1e-14));
    const TailFit fp = fit_exponential_tail(z, up, R, 2.0 * R, 6.05 * R, TailModel::free_power);
    CHECK(fp.power == doctest::Approx(4.5).epsilon(1e-9));
    CHECK(fp.decay_length / R == doctest::Approx(0.25).epsilon(1e-9));
    // the radial rule prefers the exact model
    CHECK(fit_radial_tail(z, ue, R, 2.0 * R, 6.05 * R).model == TailModel::pure_exponential);
    CHECK(fit_radial_tail(z, u6, R, 2.0 * R, 6.05 * R).model == TailModel::power6);

    std::vector<double> bad = ue;
    bad[5] = -bad[5];
    CHECK_THROWS(fit_exponential_tail(z, bad, R, 2.0 * R, 6.05 * R, TailModel::power6));
    CHECK_THROWS(fit_exponential_tail(z, ue, R, 2.0 * R, 2.5 * R, TailModel::power6));
}

TEST_CASE("resonant potentials")
{
    const Emitter e = emitter();
    const double pre = std::pow(W * W / (si::c * si::c * si::eps0), 2) * e.dipole * e.dipole * e.dipole * e.dipole / (2.0 * si::hbar * W);
    const cplx real_g(3.3e6, 0.0);
    const double ui = resonant_potential(real_g, e, e, ResonantForm::init);
    CHECK(ui == doctest::Approx(resonant_potential(real_g, e, e, ResonantForm::steady)).epsilon(1e-14));
    CHECK(ui == doctest::Approx(pre * real_g.real() * real_g.real()).epsilon(1e-5));

    // single guided mode: steady constant, init oscillating as cos^2(n_eff k z)
    const greens::Geometry si{0.8 * L, materials::preset("silicon-undoped").model, Constant{1.0}};
    const guided::GuidedMode m = *guided::find_fundamental_mode(W, si, guided::Channel::axial);
    const double img0 = guided::pole_residue(m, si).im_g0;
    const double us = resonant_potential(guided::farfield_green(m, 20.0 * L, img0).value, e, e, ResonantForm::steady);
    for (double x = 20.0; x < 30.0; x += 0.37) {
        const cplx g = guided::farfield_green(m, x * L, img0).value;
        CHECK(resonant_potential(g, e, e, ResonantForm::steady) == doctest::Approx(us).epsilon(1e-12));
        const double c2 = std::pow(std::cos(m.n_eff * x), 2);
        CHECK(resonant_potential(g, e, e, ResonantForm::init) == doctest::Approx(us * (1.0 - 2.0 * c2)).scale(us).epsilon(1e-10));
    }

    const double z = 2.0 * L;
    const double ur = resonant_potential(z, si, e, e, ResonantForm::steady);
    const double uv = vdw_potential(z, si, e, false).Utotal;
    CHECK(excited_state_potential(z, si, e, e, ResonantForm::steady) == doctest::Approx(-uv + ur).epsilon(1e-6));
}

TEST_CASE("coherence range")
{
    Emitter e = emitter();
    e.linewidth = 2.0 * pi * 6e6;
    CHECK(coherence_range(e) == doctest::Approx(3.98).epsilon(2e-3));
    const double r = coherence_range(e);
    e.linewidth = 2.0 * *e.linewidth;
    CHECK(coherence_range(e) == doctest::Approx(0.5 * r).epsilon(1e-15));
    e.linewidth = 0.0;
    CHECK_THROWS_AS(coherence_range(e), DomainError);
    e.linewidth.reset();
    CHECK_THROWS_AS(coherence_range(e), DomainError);
}

TEST_CASE("Rydberg scaling")
{
    const Emitter ref = rydberg_reference();
    CHECK(ref.omega == doctest::Approx(2.0 * pi * 51e9).epsilon(1e-15));
    CHECK(2.0 * pi * si::c / ref.omega == doctest::Approx(5.878e-3).epsilon(1e-3));
    const RydbergScaling s = rydberg_scaling(ref, 50, 100);
    CHECK(s.alpha_factor == doctest::Approx(128.0).epsilon(1e-14));
    CHECK(s.dipole_factor == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(s.omega_factor == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(s.c3_factor == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(s.retardation_length_factor == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(s.vdw_suppression == doctest::Approx(std::pow(2.0, -7)).epsilon(1e-14));
    CHECK(s.resonant_suppression == doctest::Approx(std::pow(2.0, -5)).epsilon(1e-14));
    CHECK(s.dipole == doctest::Approx(4.0 * ref.dipole).epsilon(1e-14));
    CHECK(s.omega == doctest::Approx(ref.omega / 8.0).epsilon(1e-14));
    // alpha from the scaled emitter itself
    Emitter t = ref;
    t.dipole = s.dipole;
    t.omega = s.omega;
    CHECK(alpha0(t) / alpha0(ref) == doctest::Approx(s.alpha_factor).epsilon(1e-12));
    // alpha^2 (x128^2) over z^7 at the shifted retardation boundary (x8^7)
    CHECK(s.alpha_factor * s.alpha_factor / std::pow(s.retardation_length_factor, 7) == doctest::Approx(s.vdw_suppression).epsilon(1e-14));
    CHECK(s.c3_factor / std::pow(s.retardation_length_factor, 3) == doctest::Approx(s.resonant_suppression).epsilon(1e-14));

    const RydbergScaling id = rydberg_scaling(ref, 50, 50);
    CHECK(id.alpha_factor == 1.0);
    CHECK(id.dipole == ref.dipole);
    CHECK(id.omega == ref.omega);
    CHECK_THROWS_AS(rydberg_scaling(ref, 0, 3), DomainError);
}

TEST_CASE("invalid emitters and distances")
{
    Emitter e = emitter();
    CHECK_THROWS_AS(vdw_potential(0.0, pec_tube(), e), DomainError);
    e.omega = -1.0;
    CHECK_THROWS_AS(validate(e), DomainError);
}
