#include "cylvdw/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cylvdw/errors.hpp"

namespace cylvdw::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double euler_gamma = 0.57721566490153286061;
constexpr cplx I{0.0, 1.0};
constexpr int max_iter = 20000;
// |den| below this fraction of |num| is treated as a zero of the denominator
constexpr double pole_ratio = 1e-13;

void check_order(int n)
{
    if (n != 0 && n != 1) throw DomainError("cylinder function order must be 0 or 1, got " + std::to_string(n));
}

void check_finite(cplx z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("non-finite argument");
    if (std::abs(z) >= max_abs_argument) throw DomainError("|z| outside the supported domain (1e6)");
}

// Unscaled series sums: J0 = s0, J1 = (z/2) s1.
void j_series_sums(cplx z, cplx& s0, cplx& s1)
{
    const cplx t = -0.25 * z * z;
    cplx a0 = 1.0, a1 = 1.0;
    s0 = 1.0;
    s1 = 1.0;
    for (int k = 1; k < 500; ++k) {
        a0 *= t / double(k * k);
        a1 *= t / double(k * (k + 1));
        s0 += a0;
        s1 += a1;
        if (std::abs(a0) <= eps * std::abs(s0) * 0.25 && std::abs(a1) <= eps * std::abs(s1) * 0.25) break;
    }
}

// Reflect an argument into the closed first quadrant; returns the factors that restore J.
struct Reflected {
    cplx z;
    bool conj;
    bool negate;
};

Reflected to_first_quadrant(cplx z)
{
    Reflected r{z, false, false};
    if (r.z.real() < 0.0) {
        r.z = -r.z;
        r.negate = true;
    }
    if (r.z.imag() < 0.0) {
        r.z = std::conj(r.z);
        r.conj = true;
    }
    return r;
}

Pair restore(const Reflected& r, Pair p)
{
    if (r.negate) p.v1 = -p.v1;  // J0 even, J1 odd
    if (r.conj) {
        p.v0 = std::conj(p.v0);
        p.v1 = std::conj(p.v1);
    }
    return p;
}

// Hankel asymptotic sums  sum_k (+-i)^k a_k(nu) / z^k
void hankel_sums(int nu, cplx z, cplx sign_i, cplx& out)
{
    const double mu = 4.0 * nu * nu;
    cplx term = 1.0, sum = 1.0;
    double last = 1e300;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= sign_i * (mu - odd * odd) / (8.0 * k * z);
        const double m = std::abs(term);
        if (m > last) break;
        sum += term;
        last = m;
        if (m <= eps * std::abs(sum) * 0.1) break;
    }
    out = sum;
}

// Steed / Temme CF2 for K0, K1 scaled by exp(w); requires w off the negative real axis.
void steed_k01_scaled(cplx w, cplx& k0, cplx& k1)
{
    cplx b = 2.0 * (1.0 + w);
    cplx d = 1.0 / b;
    cplx h = d, delh = d;
    cplx q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    cplx q = a1;
    double c = a1;
    double a = -a1;
    cplx s = 1.0 + q * delh;
    int i = 1;
    for (; i < max_iter; ++i) {
        a -= 2.0 * i;
        c = -a * c / (i + 1.0);
        const cplx qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const cplx dels = q * delh;
        s += dels;
        if (std::abs(dels) < eps * std::abs(s) * 0.5) break;
    }
    if (i == max_iter) throw EvaluationError("Steed continued fraction did not converge");
    h = a1 * h;
    k0 = std::sqrt(pi / (2.0 * w)) / s;
    k1 = k0 * (w + 0.5 - h) / w;
}

}  // namespace

namespace method {

Pair j_series(cplx z)
{
    cplx s0, s1;
    j_series_sums(z, s0, s1);
    const double sc = std::exp(-std::abs(z.imag()));
    return {s0 * sc, 0.5 * z * s1 * sc};
}

Pair j_ratio(cplx z)
{
    // J1/J0 by CF1, modified Lentz
    const double tiny = 1e-300;
    cplx f = tiny, C = f, D = 0.0;
    for (int k = 1; k < max_iter; ++k) {
        const cplx bk = 2.0 * k / z;
        const double ak = k == 1 ? 1.0 : -1.0;
        D = bk + ak * D;
        if (D == 0.0) D = tiny;
        C = bk + ak / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        const cplx delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < eps) break;
    }
    const Pair hs = h_steed(z);
    // Wronskian J1 H0 - J0 H1 = 2i/(pi z), with H = Hs exp(iz)
    const cplx j0 = 2.0 * I / (pi * z) * std::exp(cplx(0.0, -z.real())) / (f * hs.v0 - hs.v1);
    return {j0, f * j0};
}

Pair j_asymptotic(cplx z)
{
    cplx p0, p1, m0, m1;
    hankel_sums(0, z, I, p0);
    hankel_sums(1, z, I, p1);
    hankel_sums(0, z, -I, m0);
    hankel_sums(1, z, -I, m1);
    const cplx pre = 0.5 * std::sqrt(2.0 / (pi * z));
    const cplx up = std::exp(cplx(-2.0 * z.imag(), z.real()));  // exp(iz - Im z)
    const cplx dn = std::exp(cplx(0.0, -z.real()));            // exp(-iz - Im z)
    auto combine = [&](int nu, cplx sp, cplx sm) {
        const double phi = nu * pi / 2.0 + pi / 4.0;
        return pre * (up * std::exp(cplx(0.0, -phi)) * sp + dn * std::exp(cplx(0.0, phi)) * sm);
    };
    return {combine(0, p0, m0), combine(1, p1, m1)};
}

Pair h_series(cplx z)
{
    cplx s0, s1;
    j_series_sums(z, s0, s1);
    const cplx j0 = s0, j1 = 0.5 * z * s1;
    const cplx t = -0.25 * z * z;
    const cplx lg = std::log(0.5 * z);

    // Y0 = (2/pi)[(ln(z/2)+gamma) J0 + sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k/(k!)^2]
    cplx a = 1.0, y0sum = 0.0;
    double hk = 0.0;
    // Y1 = -2/(pi z) + (2/pi) ln(z/2) J1 - (1/pi)(z/2) sum_k [psi(k+1)+psi(k+2)] t^k/(k!(k+1)!)
    cplx b = 1.0;
    double psi1 = -euler_gamma, psi2 = 1.0 - euler_gamma;
    cplx y1sum = psi1 + psi2;
    for (int k = 1; k < 500; ++k) {
        a *= t / double(k * k);
        hk += 1.0 / k;
        const cplx ta = -a * hk;  // (-1)^{k+1} H_k (z^2/4)^k/(k!)^2 = -H_k t^k/(k!)^2
        y0sum += ta;
        b *= t / double(k * (k + 1));
        psi1 += 1.0 / k;
        psi2 += 1.0 / (k + 1);
        const cplx tb = b * (psi1 + psi2);
        y1sum += tb;
        if (std::abs(ta) <= eps * std::abs(y0sum) * 0.25 && std::abs(tb) <= eps * std::abs(y1sum) * 0.25) break;
    }
    const cplx y0 = (2.0 / pi) * ((lg + euler_gamma) * j0 + y0sum);
    const cplx y1 = -2.0 / (pi * z) + (2.0 / pi) * lg * j1 - (0.5 / pi) * z * y1sum;
    const cplx sc = std::exp(-I * z);
    return {(j0 + I * y0) * sc, (j1 + I * y1) * sc};
}

Pair h_steed(cplx z)
{
    // H_n(z) = 2/(pi i^{n+1}) K_n(-iz); exp(-iz) scaling matches exp(w) with w = -iz
    cplx k0, k1;
    steed_k01_scaled(-I * z, k0, k1);
    return {(2.0 / pi) * (-I) * k0, -(2.0 / pi) * k1};
}

Pair h_asymptotic(cplx z)
{
    cplx s0, s1;
    hankel_sums(0, z, I, s0);
    hankel_sums(1, z, I, s1);
    const cplx pre = std::sqrt(2.0 / (pi * z));
    return {pre * std::exp(cplx(0.0, -pi / 4.0)) * s0, pre * std::exp(cplx(0.0, -3.0 * pi / 4.0)) * s1};
}

}  // namespace method

Pair bessel_j_scaled(cplx z)
{
    check_finite(z);
    const double r = std::abs(z);
    if (r <= j_series_radius) return method::j_series(z);
    const Reflected q = to_first_quadrant(z);
    if (r <= asymptotic_radius) return restore(q, method::j_ratio(q.z));
    return restore(q, method::j_asymptotic(q.z));
}

Pair hankel1_scaled(cplx z)
{
    check_finite(z);
    if (z == 0.0) throw DomainError("Hankel function is singular at z = 0");
    if (z.imag() < 0.0 && z.real() <= 0.0) throw DomainError("argument below the Hankel branch cut");
    const double r = std::abs(z);
    if (r <= h_series_radius) return method::h_series(z);
    if (r <= asymptotic_radius) {
        if (z.imag() >= 0.0) return method::h_steed(z);
        // lower half plane: H1(z) = 2 J(z) - conj(H1(conj z))
        const Pair u = method::h_steed(std::conj(z));
        const Pair j = bessel_j_scaled(z);
        const cplx a = 2.0 * std::exp(cplx(z.imag() + std::abs(z.imag()), -z.real()));
        const cplx b = std::exp(cplx(2.0 * z.imag(), -2.0 * z.real()));
        return {a * j.v0 - b * std::conj(u.v0), a * j.v1 - b * std::conj(u.v1)};
    }
    return method::h_asymptotic(z);
}

cplx bessel_j(int n, cplx z)
{
    check_order(n);
    const double ay = std::abs(z.imag());
    if (ay > 700.0) throw DomainError("J_n overflows for |Im z| > 700");
    return bessel_j_scaled(z)[n] * std::exp(ay);
}

cplx bessel_j_prime(int n, cplx z)
{
    check_order(n);
    const double ay = std::abs(z.imag());
    if (ay > 700.0) throw DomainError("J_n' overflows for |Im z| > 700");
    const Pair p = bessel_j_scaled(z);
    const double sc = std::exp(ay);
    if (n == 0) return -p.v1 * sc;
    if (z == 0.0) return 0.5;
    return (p.v0 - p.v1 / z) * sc;
}

cplx hankel1(int n, cplx z)
{
    check_order(n);
    return hankel1_scaled(z)[n] * std::exp(I * z);
}

cplx hankel1_prime(int n, cplx z)
{
    check_order(n);
    const Pair p = hankel1_scaled(z);
    const cplx sc = std::exp(I * z);
    if (n == 0) return -p.v1 * sc;
    return (p.v0 - p.v1 / z) * sc;
}

cplx log_deriv(int n, const Pair& p, cplx z)
{
    check_order(n);
    const cplx num = n == 0 ? -p.v1 : p.v0;
    const cplx den = n == 0 ? p.v0 : p.v1;
    if (std::abs(den) < 1e-30 || std::abs(den) < pole_ratio * std::abs(num))
        throw PoleError("logarithmic derivative at a zero of the cylinder function");
    return n == 0 ? num / den : num / den - 1.0 / z;
}

cplx log_deriv_j(int n, cplx z)
{
    return log_deriv(n, bessel_j_scaled(z), z);
}

cplx log_deriv_h(int n, cplx z)
{
    return log_deriv(n, hankel1_scaled(z), z);
}

cplx hankel_over_bessel(int n, cplx z)
{
    check_order(n);
    const cplx j = bessel_j_scaled(z)[n];
    const cplx h = hankel1_scaled(z)[n];
    if (std::abs(j) < 1e-300) throw PoleError("H/J at a zero of J_n");
    // H/J = (Hs/Js) exp(iz - |Im z|)
    return h / j * std::exp(cplx(-z.imag() - std::abs(z.imag()), z.real()));
}

}  // namespace cylvdw::specfun
