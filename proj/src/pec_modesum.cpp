#include "cylvdw/pec_modesum.hpp"

#include <algorithm>
#include <cmath>

#include "cylvdw/errors.hpp"
#include "cylvdw/numerics.hpp"
#include "cylvdw/specfun.hpp"

namespace cylvdw::pec {

namespace {

constexpr cplx I{0.0, 1.0};

double jr(int n, double x)
{
    return specfun::bessel_j(n, x).real();
}

double jpr(int n, double x)
{
    return specfun::bessel_j_prime(n, x).real();
}

void check(cplx omega, double z, double radius)
{
    if (!(radius > 0.0)) throw DomainError("cylinder radius must be positive");
    if (!(z > 0.0)) throw DomainError("mode sum needs z > 0");
    if (omega == 0.0) throw DomainError("mode sum needs omega != 0");
}

// m-th terms of the perp and zz sums (without the common i/4pi)
std::array<cplx, 2> terms(int m, cplx k, double z, double R)
{
    const cplx k2 = k * k;
    const ModeData te1 = mode(1, m, ModeKind::te, k, R);
    const ModeData tm1 = mode(1, m, ModeKind::tm, k, R);
    const ModeData tm0 = mode(0, m, ModeKind::tm, k, R);
    const cplx kmu = te1.axial_wavenumber, kl1 = tm1.axial_wavenumber, kl0 = tm0.axial_wavenumber;
    const cplx perp = std::exp(I * kmu * z) / (2.0 * te1.overlap * kmu) + kl1 * std::exp(I * kl1 * z) / (2.0 * tm1.overlap * k2);
    const double l0 = tm0.eigenvalue;
    const cplx zz = l0 * l0 * std::exp(I * kl0 * z) / (tm0.overlap * kl0 * k2);
    return {perp, zz};
}

}  // namespace

double p01()
{
    return numerics::bessel_zero(numerics::ZeroKind::j, 0, 1).value;
}

double j1_at_p01()
{
    return jr(1, p01());
}

ModeData mode(int n, int m, ModeKind kind, cplx k, double R)
{
    if (n != 0 && n != 1) throw DomainError("only n = 0, 1 modes are available");
    ModeData d;
    d.n = n;
    d.m = m;
    d.kind = kind;
    const double root = numerics::bessel_zero(kind == ModeKind::te ? numerics::ZeroKind::j_prime : numerics::ZeroKind::j, n, m).value;
    d.eigenvalue = root / R;
    d.axial_wavenumber = sqrt_im_pos(k * k - d.eigenvalue * d.eigenvalue);
    if (d.axial_wavenumber == 0.0) throw PoleError("mode exactly at cutoff");
    if (kind == ModeKind::tm) {
        const double jp = jpr(n, root);
        d.overlap = 0.5 * R * R * jp * jp;
    } else {
        const double j = jr(n, root);
        d.overlap = 0.5 * R * R * (1.0 - double(n * n) / (root * root)) * j * j;
    }
    return d;
}

greens::AxialGreen pec_green_onaxis_fixed(cplx omega, double z, double radius, int m_max)
{
    check(omega, z, radius);
    if (m_max < 1 || m_max > numerics::bessel_zero_table_size) throw DomainError("m_max outside the zero tables");
    const cplx k = omega / si::c;
    cplx sp = 0.0, sz = 0.0;
    // smallest terms first
    for (int m = m_max; m >= 1; --m) {
        const auto t = terms(m, k, z, radius);
        sp += t[0];
        sz += t[1];
    }
    const cplx pre = I / (4.0 * pi);
    return {pre * sp, pre * sz};
}

ModeSumResult pec_green_onaxis(cplx omega, double z, double radius, int m_max, double tail_tol)
{
    check(omega, z, radius);
    if (m_max < 1) throw DomainError("m_max must be >= 1");
    const cplx k = omega / si::c;
    int mm = std::min(m_max, numerics::bessel_zero_table_size);
    ModeSumResult r;
    for (;;) {
        r.green = pec_green_onaxis_fixed(omega, z, radius, mm);
        r.modes_used = mm;
        const auto last = terms(mm, k, z, radius);
        const double scale = 1.0 / (4.0 * pi);
        const bool ok = std::abs(last[0]) * scale <= tail_tol * std::abs(r.green.perp) &&
                        std::abs(last[1]) * scale <= tail_tol * std::abs(r.green.zz);
        if (ok) {
            r.converged = true;
            return r;
        }
        if (mm >= numerics::bessel_zero_table_size) {
            r.converged = false;
            return r;
        }
        mm = std::min(2 * mm, numerics::bessel_zero_table_size);
    }
}

Asymptotic pec_gzz_asymptotic(cplx omega, double z, double radius)
{
    check(omega, z, radius);
    const cplx k = omega / si::c;
    const double p = p01(), j1 = j1_at_p01();
    const cplx v = p / (2.0 * pi * k * k * radius * radius * radius * j1 * j1) * std::exp(-p * z / radius);
    return {v, z / radius >= 2.0};
}

double uzz_suppression_ratio(double x)
{
    if (!(x > 0.0)) throw DomainError("suppression ratio needs x > 0");
    const double p = p01(), j1 = j1_at_p01();
    return 2.0 * p * p / std::pow(j1, 4) * std::pow(x, 6) * std::exp(-2.0 * p * x);
}

AsymptoticEnergy uzz_asymptotic(double z, double radius, double alpha_integral)
{
    if (!(radius > 0.0) || !(z > 0.0)) throw DomainError("uzz_asymptotic needs z, R > 0");
    const double p = p01(), j1 = j1_at_p01();
    const double c4 = std::pow(si::c, 4);
    const double v = -(si::hbar * si::mu0 * si::mu0 / (2.0 * pi)) * p * p * c4 / (4.0 * pi * pi * std::pow(j1, 4) * std::pow(radius, 6)) *
                     std::exp(-2.0 * p * z / radius) * alpha_integral;
    return {v, z / radius >= 2.0};
}

double uzz_free_nonretarded(double z, double alpha_integral)
{
    if (!(z > 0.0)) throw DomainError("needs z > 0");
    return -(si::hbar / (2.0 * pi)) * alpha_integral / (4.0 * pi * pi * si::eps0 * si::eps0 * std::pow(z, 6));
}

}  // namespace cylvdw::pec
