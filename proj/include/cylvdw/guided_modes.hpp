#pragma once

// Fundamental guided mode of the cylinder: pole of the reflection matrices,
// residue, coupling factor beta and the single-mode far-field Green function.

#include <optional>
#include <vector>

#include "cylvdw/greens.hpp"

namespace cylvdw::guided {

enum class Channel { axial, radial };  // n = 0 (TM-like) and n = 1 (hybrid HE11 / TE11)

inline int order(Channel c) { return c == Channel::axial ? 0 : 1; }

struct GuidedMode {
    double omega = 0.0;
    cplx h_pole;          // real for lossless guides, Im h = Lorentzian half-width otherwise
    double n_eff = 0.0;   // Re h_pole c / omega
    double beta = 0.0;    // coupling efficiency, filled by pole_residue
    Channel channel = Channel::radial;
};

/// (A + C) J_n(x2)^2 / (x1^2 x2^2): the denominator of the reflection matrices without
/// the poles of J_n'/J_n. Real on (k1, k2) for lossless media.
cplx dispersion_residual(cplx h, double omega, const greens::Geometry& geometry, int n);

/// Function whose zeros are the poles of the channel's integrand. Radial: dispersion_residual(n = 1).
/// Axial: the TM factor (eps1 h~(x1) x2 J0(x2) - eps2 J0'(x2) x1)/x2 (the TE factor cancels in r_NN).
/// Perfect-conductor cladding: J0(x2) (axial), J1(x2) J1'(x2) (radial).
cplx channel_function(cplx h, double omega, const greens::Geometry& geometry, Channel channel);

/// Real-valued form of channel_function for h on the guided interval.
double channel_residual(double h, double omega, const greens::Geometry& geometry, Channel channel);

struct Bracket {
    double lo, hi;
};
/// (max(Re k1, 0), Re k2), endpoints excluded.
Bracket guided_bracket(double omega, const greens::Geometry& geometry);

/// Largest root of channel_residual on the guided bracket; nullopt without a sign change.
/// Throws MaterialError for lossy media. beta is evaluated unless compute_beta is false.
std::optional<GuidedMode> find_fundamental_mode(double omega, const greens::Geometry& geometry, Channel channel,
                                                bool compute_beta = true);

struct PoleContribution {
    cplx residue;    // of the full-line integrand F(h), g_sc = int F e^{ihz} dh
    cplx amplitude;  // 2 pi i residue: pole part of g at z = 0
    double im_g0 = 0.0;  // Im g_total(0) of the channel
    double beta = 0.0;   // |amplitude| / im_g0
};

PoleContribution pole_residue(const GuidedMode& mode, const greens::Geometry& geometry);

struct FarField {
    cplx value;
    bool far_field = true;  // n_eff omega z / c >= 10
};

/// i beta Im g(0) e^{i n_eff omega |z| / c}
FarField farfield_green(const GuidedMode& mode, double z, double im_g0);

struct LorentzianFit {
    double center = 0.0;
    double half_width = 0.0;
    double peak = 0.0;
};

/// Least-squares Lorentzian y = peak G^2 / ((h - h0)^2 + G^2) through 1/y being quadratic.
LorentzianFit fit_lorentzian(const std::vector<double>& h, const std::vector<double>& y);

/// Resonance of 1/|channel_function|^2 on the real h axis. Throws FitError when the
/// peak does not exceed three times the median background.
GuidedMode estimate_lossy_pole(double omega, const greens::Geometry& geometry, Channel channel);

}  // namespace cylvdw::guided
