#include "cylvdw/greens.hpp"

#include <cmath>

#include "cylvdw/errors.hpp"
#include "cylvdw/specfun.hpp"

namespace cylvdw::greens {

namespace {

constexpr cplx I{0.0, 1.0};

struct Media {
    cplx eps1, eps2;
    bool pec;
};

Media media_at(cplx omega, const Geometry& g)
{
    const auto e2 = materials::permittivity(g.core, omega);
    const auto e1 = materials::permittivity(g.cladding, omega);
    return {e1.value, e2.value, e1.perfect_conductor};
}

// exp(i x - |Im x|): converts a ratio of scaled H and J values back to H/J
cplx hj_phase(cplx x)
{
    return std::exp(cplx(-x.imag() - std::abs(x.imag()), x.real()));
}

// Everything the integrands need at one h.
struct Local {
    Wavenumbers wn;
    specfun::Pair J2, H2, H1;
    cplx phase;
};

Local local_at(cplx h, cplx omega, const Media& m, double R)
{
    Local L;
    L.wn = wavenumbers(h, omega, m.pec ? cplx(1.0) : m.eps1, m.eps2, R);
    L.J2 = specfun::bessel_j_scaled(L.wn.x2);
    L.H2 = specfun::hankel1_scaled(L.wn.x2);
    if (!m.pec) L.H1 = specfun::hankel1_scaled(L.wn.x1);
    L.phase = hj_phase(L.wn.x2);
    return L;
}

ReflectionTerms terms_from_local(int n, const Local& L, cplx omega, const Media& m, double R)
{
    ReflectionTerms t;
    t.n = n;
    t.wn = L.wn;
    const cplx x1 = L.wn.x1, x2 = L.wn.x2, h = L.wn.h;
    if (std::abs(L.J2[n]) < 1e-300) throw PoleError("reflection matrix at a zero of J_n(x2)");
    t.prefactor = -L.H2[n] / L.J2[n] * L.phase;
    const cplx jt2 = specfun::log_deriv(n, L.J2, x2);
    const cplx ht2 = specfun::log_deriv(n, L.H2, x2);
    const cplx ht1 = specfun::log_deriv(n, L.H1, x1);
    const cplx e1 = m.eps1, e2 = m.eps2;
    const cplx rw = R * omega / si::c;
    const cplx de = e1 - e2;
    t.A = -double(n * n) * rw * rw * (h * R) * (h * R) * de * de;
    const cplx P = x1 * x1 * x2 * x2;
    const cplx te = ht1 * x2 - jt2 * x1;
    const cplx tm = e1 * ht1 * x2 - e2 * jt2 * x1;
    t.C = P * te * tm;
    t.B_mm = P * (ht1 * x2 - ht2 * x1) * tm;
    t.B_nn = P * te * (e1 * ht1 * x2 - e2 * ht2 * x1);
    t.B_mn = -t.A + I * double(n) * x1 * x1 * x2 * (R * L.wn.k2) * (h * R) * (e2 - e1) * (ht2 - jt2);
    return t;
}

// PEC: r_MM = -H'/J', r_NN = -H/J (the limit eps1 -> -inf of the general form).
ReflectionSet pec_set(int n, const Local& L)
{
    const cplx x = L.wn.x2;
    const specfun::Pair &J = L.J2, &H = L.H2;
    const cplx jp = n == 0 ? -J.v1 : J.v0 - J.v1 / x;
    const cplx hp = n == 0 ? -H.v1 : H.v0 - H.v1 / x;
    if (std::abs(J[n]) < 1e-300 || std::abs(jp) < 1e-300) throw PoleError("PEC reflection at a zero of J_n or J_n'");
    ReflectionSet r;
    r.n = n;
    r.mm = -hp / jp * L.phase;
    r.nn = -H[n] / J[n] * L.phase;
    r.mn = r.nm = 0.0;
    return r;
}

ReflectionSet set_from_terms(const ReflectionTerms& t)
{
    const cplx d = t.A + t.C;
    if (d == 0.0) throw PoleError("reflection matrices at a guided-mode pole");
    ReflectionSet r;
    r.n = t.n;
    r.mm = t.prefactor * (t.A + t.B_mm) / d;
    r.nn = t.prefactor * (t.A + t.B_nn) / d;
    r.mn = r.nm = t.prefactor * (t.A + t.B_mn) / d;
    return r;
}

// r_NN for n = 0 with the common TE factor of B_NN and C cancelled.
cplx rnn0(const Local& L, const Media& m)
{
    const cplx x1 = L.wn.x1, x2 = L.wn.x2;
    const cplx ht1 = specfun::log_deriv(0, L.H1, x1);
    const cplx ht2 = specfun::log_deriv(0, L.H2, x2);
    const cplx a = m.eps1 * ht1 * x2;
    // -(H/J)(a - e2 ht2 x1)/(a - e2 jt2 x1) with the J zero removed
    const cplx den = a * L.J2.v0 + m.eps2 * L.J2.v1 * x1;
    if (den == 0.0) throw PoleError("axial reflection at a TM guided-mode pole");
    return -L.H2.v0 * (a - m.eps2 * ht2 * x1) / den * L.phase;
}

std::array<cplx, 2> density(cplx h, cplx omega, const Media& m, double R)
{
    const Local L = local_at(h, omega, m, R);
    const cplx k2 = L.wn.k2;
    const cplx eta2sq = L.wn.eta2 * L.wn.eta2;
    cplx r1mm, r1nn, r1mn, r0nn;
    if (m.pec) {
        const ReflectionSet s1 = pec_set(1, L);
        r1mm = s1.mm;
        r1nn = s1.nn;
        r1mn = 0.0;
        r0nn = pec_set(0, L).nn;
    } else {
        const ReflectionSet s1 = set_from_terms(terms_from_local(1, L, omega, m, R));
        r1mm = s1.mm;
        r1nn = s1.nn;
        r1mn = s1.mn;
        r0nn = rnn0(L, m);
    }
    const cplx perp = I / (16.0 * pi) * (r1mm - 2.0 * I * h / k2 * r1mn + h * h / (k2 * k2) * r1nn);
    const cplx zz = I / (8.0 * pi) * eta2sq / (k2 * k2) * r0nn;
    return {perp, zz};
}

}  // namespace

void validate(const Geometry& g)
{
    if (!(g.radius > 0.0) || !std::isfinite(g.radius)) throw DomainError("cylinder radius must be positive");
    if (materials::is_perfect_conductor(g.core)) throw MaterialError("the core medium cannot be a perfect conductor");
    materials::validate(g.core);
    materials::validate(g.cladding);
}

Wavenumbers wavenumbers(cplx h, cplx omega, cplx eps1, cplx eps2, double radius)
{
    Wavenumbers w;
    w.h = h;
    w.k1 = std::sqrt(eps1) * omega / si::c;
    w.k2 = std::sqrt(eps2) * omega / si::c;
    w.eta1 = sqrt_im_pos(w.k1 * w.k1 - h * h);
    w.eta2 = sqrt_im_pos(w.k2 * w.k2 - h * h);
    w.x1 = radius * w.eta1;
    w.x2 = radius * w.eta2;
    return w;
}

cplx core_wavenumber(cplx omega, const Geometry& g)
{
    return std::sqrt(materials::permittivity(g.core, omega).value) * omega / si::c;
}

AxialGreen bulk_green(cplx k, double z)
{
    if (!(z > 0.0)) throw DomainError("bulk Green function needs z > 0");
    if (k == 0.0) throw DomainError("bulk Green function needs k != 0");
    const cplx kz = k * z;
    const cplx e = std::exp(I * kz);
    const cplx den = 4.0 * pi * k * k * z * z * z;
    return {-e * (1.0 - I * kz - kz * kz) / den, e * (2.0 - 2.0 * I * kz) / den};
}

ReflectionTerms reflection_terms(int n, cplx h, cplx omega, const Geometry& g)
{
    if (n != 0 && n != 1) throw DomainError("reflection matrices exist for n = 0, 1 only");
    validate(g);
    const Media m = media_at(omega, g);
    if (m.pec) throw MaterialError("perfect-conductor cladding has no general reflection terms");
    const Local L = local_at(h, omega, m, g.radius);
    return terms_from_local(n, L, omega, m, g.radius);
}

ReflectionSet reflection_matrices(int n, cplx h, cplx omega, const Geometry& g)
{
    if (n != 0 && n != 1) throw DomainError("reflection matrices exist for n = 0, 1 only");
    validate(g);
    const Media m = media_at(omega, g);
    const Local L = local_at(h, omega, m, g.radius);
    if (m.pec) return pec_set(n, L);
    return set_from_terms(terms_from_local(n, L, omega, m, g.radius));
}

std::array<cplx, 2> scattered_spectral_density(cplx h, cplx omega, const Geometry& g)
{
    validate(g);
    return density(h, omega, media_at(omega, g), g.radius);
}

AxialGreen scattered_green_onaxis(cplx omega, double z, const Geometry& g, const GreenOptions& opt)
{
    validate(g);
    if (!(z >= 0.0)) throw DomainError("on-axis separation must be >= 0");
    if (omega == 0.0) throw DomainError("scattered Green function needs omega != 0");
    const Media m = media_at(omega, g);
    const double R = g.radius;
    const Wavenumbers w0 = wavenumbers(0.0, omega, m.pec ? cplx(1.0) : m.eps1, m.eps2, R);

    numerics::ContourOptions co;
    co.rel_tol = opt.rel_tol;
    co.max_evaluations = opt.max_evaluations;
    co.lift = opt.lift;
    co.detour = opt.detour;
    co.k_ref = std::abs(omega) / si::c;
    const cplx kc = m.pec ? w0.k2 : w0.k1;
    // the integrand falls off like exp(-2 h R) beyond the light lines
    co.h_max = 1.1 * std::max({std::abs(w0.k1.real()), std::abs(w0.k2.real()), std::abs(kc.real())}) + 30.0 / R;

    auto f = [&](cplx h) {
        auto d = density(h, omega, m, R);
        const cplx c = std::cos(h * z);
        return std::array<cplx, 2>{d[0] * c, d[1] * c};
    };
    const auto res = numerics::contour_h_integral(f, w0.k2, kc, numerics::Parity::even, co);
    if (!res.converged) throw EvaluationError("scattered Green function: h-integral did not converge");
    return {res.value[0], res.value[1]};
}

AxialGreen total_green_onaxis(cplx omega, double z, const Geometry& g, const GreenOptions& opt)
{
    const AxialGreen s = scattered_green_onaxis(omega, z, g, opt);
    const AxialGreen b = bulk_green(core_wavenumber(omega, g), z);
    return {b.perp + s.perp, b.zz + s.zz};
}

}  // namespace cylvdw::greens
