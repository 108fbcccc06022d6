#pragma once

// Reflection coefficients from a direct 4x4 solve of the interface conditions
// (continuity of E_phi, E_z, H_phi, H_z at rho = R) for an incident M or N wave.
// Independent of the closed-form reflection expressions.

#include <array>
#include <cmath>
#include <utility>

#include "cylvdw/specfun.hpp"
#include "cylvdw/units.hpp"

namespace oracle {

using cylvdw::cplx;

inline cplx sqrt_up(cplx w)
{
    cplx e = std::sqrt(w);
    return e.imag() >= 0.0 ? e : -e;
}

inline std::array<cplx, 4> solve4(std::array<std::array<cplx, 4>, 4> M, std::array<cplx, 4> b)
{
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(M[r][c]) > std::abs(M[p][c])) p = r;
        std::swap(M[c], M[p]);
        std::swap(b[c], b[p]);
        for (int r = 0; r < 4; ++r) {
            if (r == c) continue;
            const cplx f = M[r][c] / M[c][c];
            for (int k = c; k < 4; ++k) M[r][k] -= f * M[c][k];
            b[r] -= f * b[c];
        }
    }
    std::array<cplx, 4> x;
    for (int i = 0; i < 4; ++i) x[i] = b[i] / M[i][i];
    return x;
}

struct BvpReflection {
    cplx mm, nm;  // incident M: same-kind and cross reflection
    cplx nn, mn;  // incident N
};

/// k0 = omega/c, R, permittivities eps1 (outside) and eps2 (core), order n, axial wavenumber h.
inline BvpReflection bvp_reflection(int n, cplx h, cplx k0, double R, cplx e1, cplx e2)
{
    using namespace cylvdw::specfun;
    const cplx I(0.0, 1.0);
    const cplx k1 = sqrt_up(e1) * k0, k2 = sqrt_up(e2) * k0;
    const cplx et1 = sqrt_up(k1 * k1 - h * h), et2 = sqrt_up(k2 * k2 - h * h);
    const cplx x1 = R * et1, x2 = R * et2;
    const cplx J = bessel_j(n, x2), Jp = bessel_j_prime(n, x2);
    const cplx H2 = hankel1(n, x2), H2p = hankel1_prime(n, x2);
    const cplx H1 = hankel1(n, x1), H1p = hankel1_prime(n, x1);
    const double nr = double(n) / R;
    BvpReflection out;
    {
        std::array<std::array<cplx, 4>, 4> M{};
        std::array<cplx, 4> b{};
        M[0] = {-et2 * Jp, I * h / k2 * nr * J, et1 * H1p, -I * h / k1 * nr * H1};
        b[0] = et2 * H2p;
        M[1] = {0.0, et2 * et2 / k2 * J, 0.0, -et1 * et1 / k1 * H1};
        b[1] = 0.0;
        M[2] = {k2 * (-I * h / k2 * nr * J), k2 * (-et2 * Jp), -k1 * (-I * h / k1 * nr * H1), -k1 * (-et1 * H1p)};
        b[2] = -k2 * (-I * h / k2 * nr * H2);
        M[3] = {et2 * et2 * J, 0.0, -et1 * et1 * H1, 0.0};
        b[3] = -et2 * et2 * H2;
        const auto s = solve4(M, b);
        out.mm = s[0];
        out.nm = s[1];
    }
    {
        std::array<std::array<cplx, 4>, 4> M{};
        std::array<cplx, 4> b{};
        M[0] = {-I * h / k2 * nr * J, -et2 * Jp, I * h / k1 * nr * H1, et1 * H1p};
        b[0] = I * h / k2 * nr * H2;
        M[1] = {et2 * et2 / k2 * J, 0.0, -et1 * et1 / k1 * H1, 0.0};
        b[1] = -et2 * et2 / k2 * H2;
        M[2] = {k2 * (-et2 * Jp), k2 * (I * h / k2 * nr * J), -k1 * (-et1 * H1p), -k1 * (I * h / k1 * nr * H1)};
        b[2] = k2 * et2 * H2p;
        M[3] = {0.0, et2 * et2 * J, 0.0, -et1 * et1 * H1};
        b[3] = 0.0;
        const auto s = solve4(M, b);
        out.nn = s[0];
        out.mn = s[1];
    }
    return out;
}

}  // namespace oracle
