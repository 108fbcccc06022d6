#pragma once

// Cylinder functions J_n and H_n^(1) of complex argument for n = 0, 1.
//
// Scaled forms avoid overflow:
//   bessel_j_scaled  -> J_n(z) * exp(-|Im z|)
//   hankel1_scaled   -> H_n^(1)(z) * exp(-i z)
//
// Methods by |z|:
//   J: power series (|z| <= 12), CF1 ratio + Wronskian (12 < |z| <= 25),
//      Hankel asymptotic expansion (|z| > 25)
//   H: series J + iY (|z| <= 2), Steed/Temme continued fraction for
//      K_n(-iz) (2 < |z| <= 25), Hankel asymptotic expansion (|z| > 25)
//
// The large-argument phase is the standard -pi/4 (some texts misprint -pi/5).

#include "cylvdw/units.hpp"

namespace cylvdw::specfun {

/// Values for orders 0 and 1 at the same argument.
struct Pair {
    cplx v0;
    cplx v1;
    cplx operator[](int n) const { return n == 0 ? v0 : v1; }
};

inline constexpr double j_series_radius = 12.0;
inline constexpr double h_series_radius = 2.0;
inline constexpr double asymptotic_radius = 25.0;
inline constexpr double max_abs_argument = 1e6;

Pair bessel_j_scaled(cplx z);
Pair hankel1_scaled(cplx z);

cplx bessel_j(int n, cplx z);
cplx bessel_j_prime(int n, cplx z);
cplx hankel1(int n, cplx z);
cplx hankel1_prime(int n, cplx z);

/// J_n'(z)/J_n(z). Throws PoleError at zeros of J_n.
cplx log_deriv_j(int n, cplx z);
/// H_n'(z)/H_n(z). Throws PoleError at zeros of H_n.
cplx log_deriv_h(int n, cplx z);

/// H_n^(1)(z)/J_n(z) evaluated from scaled values.
cplx hankel_over_bessel(int n, cplx z);

/// Log derivatives from an already evaluated scaled pair.
cplx log_deriv(int n, const Pair& p, cplx z);

// Single-method evaluators, exposed for the overlap checks.
namespace method {
Pair j_series(cplx z);
Pair j_ratio(cplx z);       // first quadrant only
Pair j_asymptotic(cplx z);  // first quadrant only
Pair h_series(cplx z);
Pair h_steed(cplx z);
Pair h_asymptotic(cplx z);
}  // namespace method

}  // namespace cylvdw::specfun
