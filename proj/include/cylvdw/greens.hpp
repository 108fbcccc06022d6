#pragma once

// On-axis Green tensor of a cylinder (core eps2 of radius R inside cladding eps1).
//
// g is the tensor projection in m^-1 without the omega^2/c^2 factor, e.g.
// g_zz = e^{ikz}(2 - 2ikz)/(4 pi k^2 z^3) in bulk.
// Wavenumbers: k_i = sqrt(eps_i) omega/c, eta_i = sqrt(k_i^2 - h^2) with Im >= 0,
// x_i = R eta_i.

#include "cylvdw/materials.hpp"
#include "cylvdw/numerics.hpp"
#include "cylvdw/units.hpp"

namespace cylvdw::greens {

struct Geometry {
    double radius = 0.0;
    materials::PermittivityModel core = materials::Constant{1.0};      // eps2
    materials::PermittivityModel cladding = materials::Constant{1.0};  // eps1
};

/// Radial (xx = yy) and axial (zz) projections.
struct AxialGreen {
    cplx perp{};
    cplx zz{};
};

struct Wavenumbers {
    cplx k1, k2, h, eta1, eta2, x1, x2;
};

struct ReflectionSet {
    int n = 0;
    cplx mm, nn, mn, nm;
};

/// Building blocks r_alpha = prefactor (A + B_alpha)/(A + C), prefactor = -H_n(x2)/J_n(x2).
struct ReflectionTerms {
    int n = 0;
    Wavenumbers wn;
    cplx prefactor, A, C, B_mm, B_nn, B_mn;
};

struct GreenOptions {
    double rel_tol = 1e-10;
    std::size_t max_evaluations = 400000;
    double lift = 1e-3;
    double detour = 1e-2;
};

/// k_i = sqrt(eps_i) omega / c (principal root), and the radial quantities at axial wavenumber h.
Wavenumbers wavenumbers(cplx h, cplx omega, cplx eps1, cplx eps2, double radius);

AxialGreen bulk_green(cplx k, double z);

ReflectionTerms reflection_terms(int n, cplx h, cplx omega, const Geometry& geometry);
ReflectionSet reflection_matrices(int n, cplx h, cplx omega, const Geometry& geometry);

AxialGreen scattered_green_onaxis(cplx omega, double z, const Geometry& geometry, const GreenOptions& options = {});
AxialGreen total_green_onaxis(cplx omega, double z, const Geometry& geometry, const GreenOptions& options = {});

/// Core wavenumber k2 = sqrt(eps2) omega / c.
cplx core_wavenumber(cplx omega, const Geometry& geometry);

/// Throws DomainError / MaterialError for R <= 0, invalid models or a perfect-conductor core.
void validate(const Geometry& geometry);

/// Full-line integrands F(h) of the scattered parts, g_sc = int dh F(h) e^{ihz}; index 0: perp, 1: zz.
std::array<cplx, 2> scattered_spectral_density(cplx h, cplx omega, const Geometry& geometry);

}  // namespace cylvdw::greens
