#include "cylvdw/guided_modes.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

#include "cylvdw/errors.hpp"
#include "cylvdw/specfun.hpp"

namespace cylvdw::guided {

namespace {

constexpr cplx I{0.0, 1.0};

struct Media {
    cplx eps1, eps2;
    bool pec;
};

Media media_at(double omega, const greens::Geometry& g)
{
    greens::validate(g);
    if (!(omega > 0.0)) throw DomainError("guided modes need a real frequency omega > 0");
    const auto e1 = materials::permittivity(g.cladding, omega);
    const auto e2 = materials::permittivity(g.core, omega);
    return {e1.value, e2.value, e1.perfect_conductor};
}

bool lossy(const Media& m)
{
    auto bad = [](cplx e) { return std::abs(e.imag()) > 1e-12 * std::abs(e); };
    return bad(m.eps2) || (!m.pec && bad(m.eps1));
}

// J_n and J_n' at x2 (unscaled); x2 stays moderate on the guided interval
struct CoreBessel {
    cplx j, jp;
};

CoreBessel core_bessel(int n, cplx x2)
{
    return {specfun::bessel_j(n, x2), specfun::bessel_j_prime(n, x2)};
}

cplx function_at(cplx h, double omega, const Media& m, double R, int n, bool axial)
{
    const auto w = greens::wavenumbers(h, omega, m.pec ? cplx(1.0) : m.eps1, m.eps2, R);
    const CoreBessel b = core_bessel(n, w.x2);
    if (m.pec) return axial ? b.j : b.j * b.jp;
    const cplx x1 = w.x1, x2 = w.x2;
    const cplx ht1 = specfun::log_deriv(n, specfun::hankel1_scaled(x1), x1);
    // x2 -> 0 zero removed: (eps1 h~1 x2 J0 - eps2 J0' x1)/x2, even in x2
    if (axial) return m.eps1 * ht1 * b.j + m.eps2 * x1 * (x2 == 0.0 ? cplx(0.5) : specfun::bessel_j(1, x2) / x2);
    const cplx tm = m.eps1 * ht1 * x2 * b.j - m.eps2 * b.jp * x1;
    const cplx te = ht1 * x2 * b.j - b.jp * x1;
    const cplx rw = R * omega / si::c;
    const cplx de = m.eps1 - m.eps2;
    const cplx a = -double(n * n) * rw * rw * (h * R) * (h * R) * de * de;
    return a * b.j * b.j / (x1 * x1 * x2 * x2) + te * tm;
}

// Real form: the axial TM factor is purely imaginary between the light lines.
double real_form(cplx v, const Media& m, bool axial)
{
    if (axial && !m.pec) return v.imag();
    return v.real();
}

Bracket bracket_of(double omega, const Media& m)
{
    const double k2 = (std::sqrt(m.eps2) * omega / si::c).real();
    const double k1 = m.pec ? 0.0 : (std::sqrt(m.eps1) * omega / si::c).real();
    return {std::max(k1, 0.0), k2};
}

constexpr int scan_points = 800;

}  // namespace

cplx dispersion_residual(cplx h, double omega, const greens::Geometry& g, int n)
{
    if (n != 0 && n != 1) throw DomainError("dispersion residual exists for n = 0, 1 only");
    const Media m = media_at(omega, g);
    if (m.pec) throw MaterialError("perfect-conductor cladding: use channel_function");
    return function_at(h, omega, m, g.radius, n, false);
}

cplx channel_function(cplx h, double omega, const greens::Geometry& g, Channel channel)
{
    const Media m = media_at(omega, g);
    return function_at(h, omega, m, g.radius, order(channel), channel == Channel::axial);
}

double channel_residual(double h, double omega, const greens::Geometry& g, Channel channel)
{
    const Media m = media_at(omega, g);
    const bool axial = channel == Channel::axial;
    return real_form(function_at(h, omega, m, g.radius, order(channel), axial), m, axial);
}

Bracket guided_bracket(double omega, const greens::Geometry& g)
{
    return bracket_of(omega, media_at(omega, g));
}

std::optional<GuidedMode> find_fundamental_mode(double omega, const greens::Geometry& g, Channel channel, bool compute_beta)
{
    const Media m = media_at(omega, g);
    if (lossy(m)) throw MaterialError("lossy medium: the guided pole is off the real axis, use estimate_lossy_pole");
    const Bracket br = bracket_of(omega, m);
    if (!(br.hi > br.lo)) return std::nullopt;
    const double R = g.radius;
    const int n = order(channel);
    const bool axial = channel == Channel::axial;
    auto f = [&](double h) { return real_form(function_at(h, omega, m, R, n, axial), m, axial); };

    const double span = br.hi - br.lo;
    const double lo = br.lo + 1e-9 * span, hi = br.hi - 1e-9 * span;
    double prev_h = hi, prev_f = f(hi);
    for (int i = 1; i <= scan_points; ++i) {
        const double h = hi - (hi - lo) * double(i) / scan_points;
        const double v = f(h);
        if (prev_f == 0.0) {
            GuidedMode md{omega, prev_h, prev_h * si::c / omega, 0.0, channel};
            if (compute_beta) md.beta = pole_residue(md, g).beta;
            return md;
        }
        if ((v < 0.0) != (prev_f < 0.0) && v != 0.0) {
            const double root = numerics::find_root_real(f, h, prev_h, 1e-15 * br.hi);
            GuidedMode md{omega, root, root * si::c / omega, 0.0, channel};
            if (compute_beta) md.beta = pole_residue(md, g).beta;
            return md;
        }
        prev_h = h;
        prev_f = v;
    }
    return std::nullopt;
}

PoleContribution pole_residue(const GuidedMode& mode, const greens::Geometry& g)
{
    const Media m = media_at(mode.omega, g);
    const double R = g.radius, omega = mode.omega;
    const int n = order(mode.channel);
    const bool axial = mode.channel == Channel::axial;
    const int idx = axial ? 1 : 0;
    const double h0 = mode.h_pole.real();
    auto D = [&](cplx h) { return function_at(h, omega, m, R, n, axial); };

    // the integrand is analytic just below the real axis (the contour side)
    const double d = 1e-6 * h0;
    auto G = [&](double s) {
        const cplx h = cplx(h0, -s);
        return greens::scattered_spectral_density(h, omega, g)[idx] * D(h);
    };
    const cplx numerator = 2.0 * G(d) - G(2.0 * d);
    const double step = 1e-6 * h0;
    const cplx slope = (D(h0 + step) - D(h0 - step)) / (2.0 * step);
    if (slope == 0.0) throw PoleError("double root of the dispersion relation");

    PoleContribution p;
    p.residue = numerator / slope;
    p.amplitude = 2.0 * pi * I * p.residue;
    const greens::AxialGreen sc = greens::scattered_green_onaxis(omega, 0.0, g);
    const double k2 = (std::sqrt(m.eps2) * omega / si::c).real();
    p.im_g0 = k2 / (6.0 * pi) + (axial ? sc.zz : sc.perp).imag();
    if (!(p.im_g0 > 0.0)) throw EvaluationError("non-positive Im g(0)");
    p.beta = std::abs(p.amplitude) / p.im_g0;
    return p;
}

FarField farfield_green(const GuidedMode& mode, double z, double im_g0)
{
    const double phase = mode.n_eff * mode.omega * std::abs(z) / si::c;
    return {I * mode.beta * im_g0 * std::exp(I * phase), phase >= 10.0};
}

LorentzianFit fit_lorentzian(const std::vector<double>& h, const std::vector<double>& y)
{
    if (h.size() != y.size() || h.size() < 3) throw FitError("Lorentzian fit needs >= 3 samples");
    double mean = 0.0;
    for (double v : h) mean += v;
    mean /= double(h.size());
    double scale = 0.0;
    for (double v : h) scale = std::max(scale, std::abs(v - mean));
    if (scale == 0.0) throw FitError("Lorentzian fit needs distinct abscissae");
    // 1/y = a t^2 + b t + c with t = (h - mean)/scale
    double S[5] = {0, 0, 0, 0, 0}, T[3] = {0, 0, 0};
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(y[i] > 0.0)) throw FitError("Lorentzian fit needs positive samples");
        const double t = (h[i] - mean) / scale, v = 1.0 / y[i];
        double p = 1.0;
        for (int k = 0; k < 5; ++k) {
            S[k] += p;
            if (k < 3) T[k] += p * v;
            p *= t;
        }
    }
    // normal equations in the basis (1, t, t^2)
    double M[3][4] = {{S[0], S[1], S[2], T[0]}, {S[1], S[2], S[3], T[1]}, {S[2], S[3], S[4], T[2]}};
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        std::swap(M[c], M[piv]);
        if (M[c][c] == 0.0) throw FitError("singular Lorentzian fit");
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            const double f = M[r][c] / M[c][c];
            for (int k = c; k < 4; ++k) M[r][k] -= f * M[c][k];
        }
    }
    const double c0 = M[0][3] / M[0][0], c1 = M[1][3] / M[1][1], c2 = M[2][3] / M[2][2];
    if (!(c2 > 0.0)) throw FitError("no resonance: 1/y is not convex");
    const double t0 = -c1 / (2.0 * c2);
    const double g2 = c0 / c2 - t0 * t0;
    if (!(g2 > 0.0)) throw FitError("no resonance: non-positive width");
    LorentzianFit r;
    r.center = mean + scale * t0;
    r.half_width = scale * std::sqrt(g2);
    r.peak = 1.0 / (c2 * g2);
    return r;
}

GuidedMode estimate_lossy_pole(double omega, const greens::Geometry& g, Channel channel)
{
    const Media m = media_at(omega, g);
    const Bracket br = bracket_of(omega, m);
    if (!(br.hi > br.lo)) throw FitError("empty guided interval");
    const double R = g.radius;
    const int n = order(channel);
    const bool axial = channel == Channel::axial;
    auto d2 = [&](double h) { return std::norm(function_at(h, omega, m, R, n, axial)); };

    const double span = br.hi - br.lo;
    const double lo = br.lo + 1e-9 * span, hi = br.hi - 1e-9 * span;
    const int N = 2000;
    std::vector<double> hs(N + 1), ys(N + 1);
    int best = 0;
    for (int i = 0; i <= N; ++i) {
        hs[i] = lo + (hi - lo) * double(i) / N;
        const double v = d2(hs[i]);
        ys[i] = v > 0.0 ? 1.0 / v : HUGE_VAL;
        if (ys[i] > ys[best]) best = i;
    }
    const double background = numerics::detail::median_of(ys);
    if (!(ys[best] > 3.0 * background)) throw FitError("no resonance above the background in the guided interval");

    const double a = hs[std::max(best - 1, 0)], b = hs[std::min(best + 1, N)];
    double hm = boost::math::tools::brent_find_minima(d2, a, b, 40).first;
    const double step = 1e-6 * hm;
    const cplx slope = (function_at(hm + step, omega, m, R, n, axial) - function_at(hm - step, omega, m, R, n, axial)) / (2.0 * step);
    double width = std::sqrt(d2(hm)) / std::abs(slope);
    width = std::max(width, 1e-10 * hm);

    LorentzianFit fit{hm, width, 0.0};
    for (int it = 0; it < 4; ++it) {
        const double wl = std::max(fit.center - 3.0 * fit.half_width, lo);
        const double wh = std::min(fit.center + 3.0 * fit.half_width, hi);
        std::vector<double> fh(41), fy(41);
        for (int i = 0; i <= 40; ++i) {
            fh[i] = wl + (wh - wl) * double(i) / 40.0;
            fy[i] = 1.0 / d2(fh[i]);
        }
        fit = fit_lorentzian(fh, fy);
    }
    GuidedMode md;
    md.omega = omega;
    md.h_pole = cplx(fit.center, fit.half_width);
    md.n_eff = fit.center * si::c / omega;
    md.channel = channel;
    return md;
}

}  // namespace cylvdw::guided
