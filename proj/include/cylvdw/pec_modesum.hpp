#pragma once

// Perfectly conducting hollow cylinder: discrete mode expansion of the on-axis
// Green function and its single-mode far-field asymptotics.
//
// TE-like modes: mu = q_nm/R (zeros of J_n'), TM-like: lambda = p_nm/R (zeros of J_n).
// Axial wavenumbers k_mu = sqrt(k^2 - mu^2), Im >= 0. Only n = 0 (axial) and
// n = 1 (radial) survive on the axis. The depolarising delta term is absent for z > 0.

#include "cylvdw/greens.hpp"

namespace cylvdw::pec {

enum class ModeKind { te, tm };

struct ModeData {
    int n = 0;
    int m = 0;
    ModeKind kind = ModeKind::tm;
    double eigenvalue = 0.0;  // mu or lambda, m^-1
    cplx axial_wavenumber;    // k_mu or k_lambda
    double overlap = 0.0;     // I_mu or I_lambda, m^2
};

ModeData mode(int n, int m, ModeKind kind, cplx k, double radius);

struct ModeSumResult {
    greens::AxialGreen green;
    int modes_used = 0;
    bool converged = true;
};

inline constexpr int default_mode_count = 64;

/// On-axis Green function by mode summation; doubles m_max up to the zero tables until
/// the tail bound (last term / partial sum) falls below tail_tol.
ModeSumResult pec_green_onaxis(cplx omega, double z, double radius, int m_max = default_mode_count, double tail_tol = 1e-12);

/// Sum with exactly m_max terms per family (no doubling).
greens::AxialGreen pec_green_onaxis_fixed(cplx omega, double z, double radius, int m_max);

struct Asymptotic {
    cplx value;
    bool within_validity = true;  // z/R >= 2
};

/// Single TM01 term: p01 e^{-p01 z/R} / (2 pi k^2 R^3 J1(p01)^2), k = omega/c.
Asymptotic pec_gzz_asymptotic(cplx omega, double z, double radius);

/// 2 p01^2 / J1(p01)^4 x^6 e^{-2 p01 x}.
double uzz_suppression_ratio(double x);

/// -(hbar mu0^2/2pi) p01^2 c^4 / (4 pi^2 J1(p01)^4 R^6) e^{-2 p01 z/R} * alpha_integral, in J.
/// alpha_integral = int_0^inf dxi alpha(i xi)^2 in SI units.
struct AsymptoticEnergy {
    double value;
    bool within_validity = true;
};
AsymptoticEnergy uzz_asymptotic(double z, double radius, double alpha_integral);

/// Non-retarded free-space U_zz for the same alpha integral: -(hbar/2pi) alpha_integral / (4 pi^2 eps0^2 z^6).
double uzz_free_nonretarded(double z, double alpha_integral);

double p01();
double j1_at_p01();

}  // namespace cylvdw::pec
