#include "cylvdw/potential.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "cylvdw/errors.hpp"
#include "cylvdw/numerics.hpp"
#include "cylvdw/pec_modesum.hpp"

namespace cylvdw::potential {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// beyond |k2| R ~ 350 the scattered part is below exp(-700)
constexpr double scattered_cutoff = 350.0;

double project(const greens::AxialGreen& g, Orientation o)
{
    return (o == Orientation::axial ? g.zz : g.perp).real();
}

// -hbar/(2 pi) xi^4/(c^4 eps0^2) alpha(i xi)^2
double weight(double xi, const Emitter& e)
{
    const double a = polarizability(e, cplx(0.0, xi)).real();
    const double q = xi * xi / (si::c * si::c * si::eps0);
    return -si::hbar / (2.0 * pi) * q * q * a * a;
}

std::string at_z(const char* what, double z)
{
    std::ostringstream s;
    s << what << " at z = " << z << " m";
    return s.str();
}

}  // namespace

void validate(const Emitter& e)
{
    if (!(e.omega > 0.0) || !std::isfinite(e.omega)) throw DomainError("emitter transition frequency must be positive");
    if (!(e.dipole > 0.0) || !std::isfinite(e.dipole)) throw DomainError("emitter dipole must be positive");
    if (e.linewidth && !(*e.linewidth >= 0.0)) throw DomainError("emitter linewidth must be non-negative");
}

cplx polarizability(const Emitter& e, cplx omega, double shift)
{
    validate(e);
    const cplx w = omega + I * shift;
    const cplx den = e.omega * e.omega - w * w;
    if (den == 0.0 || (shift == 0.0 && omega.imag() == 0.0 && std::abs(std::abs(omega.real()) - e.omega) <= 1e-14 * e.omega))
        throw PoleError("polarizability at its resonance on the real axis");
    return 2.0 * e.dipole * e.dipole * e.omega / si::hbar / den;
}

double alpha_squared_integral(const Emitter& e)
{
    validate(e);
    return pi * std::pow(e.dipole, 4) / (si::hbar * si::hbar * e.omega);
}

PotentialBreakdown vdw_potential(double z, const greens::Geometry& geometry, const Emitter& emitter, bool decomposition,
                                 const PotentialOptions& options)
{
    if (!(z > 0.0)) throw DomainError("separation must be positive");
    validate(emitter);
    greens::validate(geometry);
    const double R = geometry.radius;
    const bool pec = materials::is_perfect_conductor(geometry.cladding);
    greens::GreenOptions go;
    go.rel_tol = options.green_rel_tol;

    auto f = [&](double xi) {
        std::array<double, 4> v{0.0, 0.0, 0.0, 0.0};
        if (xi == 0.0) return v;
        const cplx w(0.0, xi);
        const cplx k2 = greens::core_wavenumber(w, geometry);
        const double g0 = project(greens::bulk_green(k2, z), emitter.orientation);
        double gt = g0, gs = 0.0;
        if (std::abs(k2) * R < scattered_cutoff) {
            bool done = false;
            if (pec && options.pec_mode_sum) {
                const auto ms = pec::pec_green_onaxis(w, z, R);
                if (ms.converged) {
                    gt = project(ms.green, emitter.orientation);
                    gs = gt - g0;
                    done = true;
                }
            }
            if (!done) {
                gs = project(greens::scattered_green_onaxis(w, z, geometry, go), emitter.orientation);
                gt = g0 + gs;
            }
        }
        const double wt = weight(xi, emitter);
        return std::array<double, 4>{wt * g0 * g0, wt * gs * gs, wt * g0 * gs, wt * gt * gt};
    };

    numerics::QuadratureOptions qo;
    qo.rel_tol = options.rel_tol;
    qo.max_evaluations = options.max_evaluations;
    const auto r = numerics::integrate_semiinfinite(f, emitter.omega, qo);
    if (!r.converged) throw EvaluationError(at_z("frequency integral did not converge", z));

    PotentialBreakdown b;
    b.z = z;
    b.Ufree = r.value[0];
    b.Utotal = r.value[3];
    b.evaluations = r.evaluations;
    if (decomposition) {
        b.U0 = r.value[0];
        b.Usc = r.value[1];
        b.Ucross = r.value[2];
    } else {
        b.U0 = b.Usc = b.Ucross = nan;
    }
    return b;
}

double free_space_potential(double z, const materials::PermittivityModel& medium, const Emitter& emitter, const PotentialOptions& options)
{
    if (!(z > 0.0)) throw DomainError("separation must be positive");
    validate(emitter);
    materials::validate(medium);
    if (materials::is_perfect_conductor(medium)) throw MaterialError("a perfect conductor is not a host medium");
    auto f = [&](double xi) {
        if (xi == 0.0) return 0.0;
        const cplx w(0.0, xi);
        const cplx k = std::sqrt(materials::permittivity(medium, w).value) * w / si::c;
        const double g = project(greens::bulk_green(k, z), emitter.orientation);
        return weight(xi, emitter) * g * g;
    };
    numerics::QuadratureOptions qo;
    qo.rel_tol = options.rel_tol;
    qo.max_evaluations = options.max_evaluations;
    const auto r = numerics::integrate_semiinfinite(f, emitter.omega, qo);
    if (!r.converged) throw EvaluationError(at_z("free-space frequency integral did not converge", z));
    return r.value;
}

double resonant_potential(cplx green, const Emitter& excited, const Emitter& ground, ResonantForm form, const ResonantOptions& options)
{
    validate(excited);
    validate(ground);
    const double w1 = excited.omega;
    const bool degenerate = std::abs(w1 - ground.omega) <= 1e-12 * ground.omega;
    const double shift = degenerate ? options.degenerate_shift * ground.omega : 0.0;
    const double a2 = polarizability(ground, w1, shift).real();
    const double q = w1 * w1 / (si::c * si::c * si::eps0);
    const double g2 = form == ResonantForm::init ? (green * green).real() : std::norm(green);
    return q * q * excited.dipole * excited.dipole * a2 * g2;
}

double resonant_potential(double z, const greens::Geometry& geometry, const Emitter& excited, const Emitter& ground, ResonantForm form,
                          const ResonantOptions& options)
{
    if (!(z > 0.0)) throw DomainError("separation must be positive");
    if (excited.orientation != ground.orientation) throw DomainError("both emitters must share the orientation");
    const auto g = greens::total_green_onaxis(excited.omega, z, geometry, options.green);
    const cplx v = excited.orientation == Orientation::axial ? g.zz : g.perp;
    return resonant_potential(v, excited, ground, form, options);
}

double excited_state_potential(double z, const greens::Geometry& geometry, const Emitter& excited, const Emitter& ground, ResonantForm form,
                               const PotentialOptions& options, const ResonantOptions& resonant)
{
    const double uvdw = vdw_potential(z, geometry, excited, false, options).Utotal;
    return -uvdw + resonant_potential(z, geometry, excited, ground, form, resonant);
}

double coherence_range(const Emitter& excited)
{
    if (!excited.linewidth || !(*excited.linewidth > 0.0)) throw DomainError("coherence range needs a positive emitter linewidth");
    return si::c / (2.0 * *excited.linewidth);
}

RydbergScaling rydberg_scaling(const Emitter& reference, int n_ref, int n_target)
{
    validate(reference);
    if (n_ref < 1 || n_target < 1) throw DomainError("principal quantum numbers must be >= 1");
    RydbergScaling s;
    s.n_ref = n_ref;
    s.n = n_target;
    const double r = double(n_target) / double(n_ref);
    s.dipole_factor = r * r;
    s.omega_factor = 1.0 / (r * r * r);
    s.dipole = reference.dipole * s.dipole_factor;
    s.omega = reference.omega * s.omega_factor;
    s.alpha_factor = s.dipole_factor * s.dipole_factor / s.omega_factor;
    s.c3_factor = s.dipole_factor * s.dipole_factor;
    s.retardation_length_factor = 1.0 / s.omega_factor;
    s.vdw_suppression = s.alpha_factor * s.alpha_factor / std::pow(s.retardation_length_factor, 7);
    s.resonant_suppression = s.c3_factor / std::pow(s.retardation_length_factor, 3);
    return s;
}

Emitter rydberg_reference()
{
    Emitter e;
    e.omega = 2.0 * pi * 51e9;
    e.dipole = double(rydberg_reference_n * rydberg_reference_n) * si::e * si::a0;
    e.orientation = Orientation::axial;
    return e;
}

namespace {

// least squares for y ~ X b with up to three columns
template <std::size_t P>
std::array<double, P> lstsq(const std::vector<std::array<double, P>>& X, const std::vector<double>& y)
{
    double M[P][P + 1] = {};
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t a = 0; a < P; ++a) {
            for (std::size_t b = 0; b < P; ++b) M[a][b] += X[i][a] * X[i][b];
            M[a][P] += X[i][a] * y[i];
        }
    for (std::size_t c = 0; c < P; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < P; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        for (std::size_t k = 0; k <= P; ++k) std::swap(M[c][k], M[piv][k]);
        if (M[c][c] == 0.0) throw FitError("singular tail fit");
        for (std::size_t r = 0; r < P; ++r) {
            if (r == c) continue;
            const double f = M[r][c] / M[c][c];
            for (std::size_t k = c; k <= P; ++k) M[r][k] -= f * M[c][k];
        }
    }
    std::array<double, P> b;
    for (std::size_t a = 0; a < P; ++a) b[a] = M[a][P] / M[a][a];
    return b;
}

}  // namespace

TailFit fit_exponential_tail(const std::vector<double>& z, const std::vector<double>& u, double radius, double z_lo, double z_hi,
                             TailModel model)
{
    if (z.size() != u.size()) throw FitError("z and u differ in length");
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    std::vector<double> x, lu;
    double sign = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] < z_lo || z[i] > z_hi) continue;
        if (!(u[i] != 0.0) || !std::isfinite(u[i])) throw FitError("zero or non-finite sample in the fit window");
        const double s = u[i] > 0.0 ? 1.0 : -1.0;
        if (sign == 0.0) sign = s;
        if (s != sign) throw FitError("sign change in the fit window");
        x.push_back(z[i] / radius);
        lu.push_back(std::log(std::abs(u[i])));
    }
    if (x.size() < 6) throw FitError("tail fit needs at least 6 samples in the window");

    const std::size_t n = x.size();
    double xm = 0.0, lm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i];
        lm += std::log(x[i]);
    }
    xm /= double(n);
    lm /= double(n);

    TailFit f;
    f.model = model;
    f.samples = n;
    std::vector<double> fitted(n);
    double c = 0.0, s = 0.0, p = 0.0;
    if (model == TailModel::free_power) {
        std::vector<std::array<double, 3>> X(n);
        for (std::size_t i = 0; i < n; ++i) X[i] = {1.0, std::log(x[i]) - lm, x[i] - xm};
        const auto b = lstsq<3>(X, lu);
        p = b[1];
        s = b[2];
        c = b[0] - p * lm - s * xm;
    } else {
        p = model == TailModel::power6 ? 6.0 : 0.0;
        std::vector<std::array<double, 2>> X(n);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            X[i] = {1.0, x[i] - xm};
            y[i] = lu[i] - p * std::log(x[i]);
        }
        const auto b = lstsq<2>(X, y);
        s = b[1];
        c = b[0] - s * xm;
    }
    if (!(s < 0.0)) throw FitError("no decay in the fit window");
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        fitted[i] = c + p * std::log(x[i]) + s * x[i];
        const double d = fitted[i] - lu[i];
        sq += d * d;
        f.residual = std::max(f.residual, std::abs(std::expm1(d)));
    }
    f.rms = std::sqrt(sq / double(n));
    f.power = p;
    f.decay_length = -radius / s;
    f.effective_radius = 2.0 * pec::p01() * f.decay_length;
    f.prefactor = sign * std::exp(c);
    return f;
}

TailFit fit_radial_tail(const std::vector<double>& z, const std::vector<double>& u, double radius, double z_lo, double z_hi)
{
    const TailFit a = fit_exponential_tail(z, u, radius, z_lo, z_hi, TailModel::pure_exponential);
    const TailFit b = fit_exponential_tail(z, u, radius, z_lo, z_hi, TailModel::power6);
    if (a.residual <= b.residual * 1.01) return a;
    return b;
}

}  // namespace cylvdw::potential
