#pragma once

#include <complex>
#include <numbers>

namespace cylvdw {

using cplx = std::complex<double>;

namespace si {
// CODATA 2018 exact / recommended values
inline constexpr double c = 299792458.0;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double e = 1.602176634e-19;
inline constexpr double eps0 = 8.8541878128e-12;
inline constexpr double mu0 = 1.25663706212e-6;
inline constexpr double m_e = 9.1093837015e-31;
inline constexpr double a0 = 5.29177210903e-11;
}  // namespace si

inline constexpr double pi = std::numbers::pi;

/// Photon energy in eV to angular frequency in rad/s.
constexpr double ev_to_rad_per_s(double ev) { return ev * si::e / si::hbar; }
constexpr double rad_per_s_to_ev(double w) { return w * si::hbar / si::e; }

/// Vacuum wavelength in m to angular frequency in rad/s.
constexpr double wavelength_to_omega(double lambda) { return 2.0 * pi * si::c / lambda; }

/// Square root with Im >= 0 (outgoing / decaying branch), real positive on the positive real axis.
inline cplx sqrt_im_pos(cplx w)
{
    cplx r = std::sqrt(w);
    if (r.imag() < 0.0 || (r.imag() == 0.0 && r.real() < 0.0)) r = -r;
    return r;
}

}  // namespace cylvdw
