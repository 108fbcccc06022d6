#pragma once

// Two-body dispersion potentials of identical emitters on the cylinder axis.
//
// U(z) = -hbar/(2 pi) int_0^inf dxi xi^4/(c^4 eps0^2) alpha(i xi)^2 g(z, i xi)^2
// with g the projection of the on-axis Green function onto the dipole axis.
// Split g = g0 + gsc: U = U0 + Usc + 2 Ucross.

#include <optional>
#include <vector>

#include "cylvdw/greens.hpp"

namespace cylvdw::potential {

enum class Orientation { axial, radial };

struct Emitter {
    double omega = 0.0;                 // transition frequency, rad/s
    double dipole = si::e * si::a0;     // transition dipole, C m
    Orientation orientation = Orientation::axial;
    std::optional<double> linewidth;    // rad/s
};

void validate(const Emitter& e);

/// 2 d^2 Omega / hbar / (Omega^2 - (w + i shift)^2). Throws PoleError at w = +-Omega with shift = 0.
cplx polarizability(const Emitter& e, cplx omega, double shift = 0.0);

/// int_0^inf alpha(i xi)^2 dxi = pi d^4 / (hbar^2 Omega)
double alpha_squared_integral(const Emitter& e);

struct PotentialOptions {
    double rel_tol = 1e-6;
    double green_rel_tol = 1e-9;
    std::size_t max_evaluations = 20000;
    bool pec_mode_sum = true;  // mode expansion for perfect-conductor claddings
};

struct PotentialBreakdown {
    double z = 0.0;
    double U0 = 0.0, Usc = 0.0, Ucross = 0.0, Utotal = 0.0;
    double Ufree = 0.0;  // bulk potential in the core medium
    std::size_t evaluations = 0;
    double normalized() const { return Utotal / Ufree; }
};

/// decomposition = false leaves U0, Usc, Ucross as NaN but still reports Ufree.
PotentialBreakdown vdw_potential(double z, const greens::Geometry& geometry, const Emitter& emitter, bool decomposition = true,
                                 const PotentialOptions& options = {});

double free_space_potential(double z, const materials::PermittivityModel& medium, const Emitter& emitter,
                            const PotentialOptions& options = {});

enum class ResonantForm { init, steady };

struct ResonantOptions {
    double degenerate_shift = 1e-6;  // i0+ shift in units of Omega for Omega1 == Omega2
    greens::GreenOptions green{};
};

/// (Omega1^2/(c^2 eps0))^2 |d1|^2 Re alpha2(Omega1) * {Re g^2 (init) | |g|^2 (steady)}, g at Omega1.
double resonant_potential(double z, const greens::Geometry& geometry, const Emitter& excited, const Emitter& ground, ResonantForm form,
                          const ResonantOptions& options = {});

/// Same with a given Green function value at Omega1.
double resonant_potential(cplx green, const Emitter& excited, const Emitter& ground, ResonantForm form, const ResonantOptions& options = {});

/// U_ge = -U_vdW + U_res
double excited_state_potential(double z, const greens::Geometry& geometry, const Emitter& excited, const Emitter& ground, ResonantForm form,
                               const PotentialOptions& options = {}, const ResonantOptions& resonant = {});

/// c / (2 gamma). Throws DomainError without a positive linewidth.
double coherence_range(const Emitter& excited);

struct RydbergScaling {
    int n_ref = 0, n = 0;
    double dipole = 0.0, omega = 0.0;  // scaled values
    double dipole_factor = 1.0;     // (n/n_ref)^2
    double omega_factor = 1.0;      // (n_ref/n)^3
    double alpha_factor = 1.0;      // (n/n_ref)^7
    double c3_factor = 1.0;         // (n/n_ref)^4
    double retardation_length_factor = 1.0;  // c/Omega: (n/n_ref)^3
    double vdw_suppression = 1.0;       // alpha^2 / z^7 at z = c/Omega: (n/n_ref)^-7
    double resonant_suppression = 1.0;  // C3 / z^3 at z = c/Omega: (n/n_ref)^-5
};

RydbergScaling rydberg_scaling(const Emitter& reference, int n_ref, int n_target);

/// |n, l = n-1> -> |n+1, l = n> for n = 50: Omega = 2 pi x 51 GHz.
Emitter rydberg_reference();
inline constexpr int rydberg_reference_n = 50;

enum class TailModel {
    power6,            // ln|u| - 6 ln(z/R) linear in z (axial asymptote family)
    pure_exponential,  // ln|u| linear in z (radial, U ~ e^{-z/l} z^-7 over a z^-7 reference)
    free_power,        // ln|u| = c + p ln(z/R) - z/l
};

struct TailFit {
    TailModel model = TailModel::power6;
    double decay_length = 0.0;      // l, u ~ e^{-z/l}
    double effective_radius = 0.0;  // 2 p01 l
    double prefactor = 0.0;         // u = prefactor (z/R)^power e^{-z/l}
    double power = 0.0;
    double residual = 0.0;  // max |u_fit/u - 1| in the window
    double rms = 0.0;       // rms of the log residuals
    std::size_t samples = 0;
};

/// Least-squares tail fit over z in [z_lo, z_hi]. Needs >= 6 samples of one sign.
TailFit fit_exponential_tail(const std::vector<double>& z, const std::vector<double>& u, double radius, double z_lo, double z_hi,
                             TailModel model);

/// power6 and pure_exponential; the smaller residual wins, near-ties (1 %) go to pure_exponential.
TailFit fit_radial_tail(const std::vector<double>& z, const std::vector<double>& u, double radius, double z_lo, double z_hi);

}  // namespace cylvdw::potential
