#pragma once

// Adaptive Gauss-Kronrod quadrature (finite, semi-infinite, complex h-contour),
// bracketed root finding and Bessel-zero tables.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "cylvdw/errors.hpp"
#include "cylvdw/units.hpp"

namespace cylvdw::numerics {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_evaluations = 100000;
};

template <class T>
struct QuadratureResult {
    T value{};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;  // false: budget exhausted, value is the partial result
};

namespace detail {

template <std::size_t N>
using CVec = std::array<cplx, N>;

template <class T>
struct ValueTraits;

template <>
struct ValueTraits<double> {
    static constexpr std::size_t N = 1;
    static CVec<1> pack(double v) { return {cplx(v, 0.0)}; }
    static double unpack(const CVec<1>& v) { return v[0].real(); }
};

template <>
struct ValueTraits<cplx> {
    static constexpr std::size_t N = 1;
    static CVec<1> pack(cplx v) { return {v}; }
    static cplx unpack(const CVec<1>& v) { return v[0]; }
};

template <std::size_t M>
struct ValueTraits<std::array<double, M>> {
    static constexpr std::size_t N = M;
    static CVec<M> pack(const std::array<double, M>& v)
    {
        CVec<M> r;
        for (std::size_t i = 0; i < M; ++i) r[i] = v[i];
        return r;
    }
    static std::array<double, M> unpack(const CVec<M>& v)
    {
        std::array<double, M> r;
        for (std::size_t i = 0; i < M; ++i) r[i] = v[i].real();
        return r;
    }
};

template <std::size_t M>
struct ValueTraits<std::array<cplx, M>> {
    static constexpr std::size_t N = M;
    static CVec<M> pack(const CVec<M>& v) { return v; }
    static CVec<M> unpack(const CVec<M>& v) { return v; }
};

// Kronrod 21-point nodes/weights with the embedded 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525634248, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697, 0.219086362515982043995534934228163,
    0.269266719309996355091226921569469, 0.295524224714752870173892994651338};

template <std::size_t N>
struct Panel {
    double a, b;
    CVec<N> value;
    std::array<double, N> error;
    std::array<double, N> l1;  // integral of |f|, sets the round-off floor
};

template <std::size_t N>
inline bool all_finite(const CVec<N>& v)
{
    for (const auto& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

template <std::size_t N, class G>
Panel<N> gk21(G& g, double a, double b)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<CVec<N>, 21> fv;
    fv[0] = g(c);
    for (int j = 0; j < 10; ++j) {
        fv[1 + 2 * j] = g(c - h * xgk[j]);
        fv[2 + 2 * j] = g(c + h * xgk[j]);
    }
    for (const auto& v : fv)
        if (!all_finite<N>(v)) throw EvaluationError("integrand returned a non-finite value on [" + std::to_string(a) + ", " + std::to_string(b) + "]");

    Panel<N> p{a, b, {}, {}, {}};
    for (std::size_t k = 0; k < N; ++k) {
        cplx rk = fv[0][k] * wgk[10], rg = 0.0;
        for (int j = 0; j < 10; ++j) {
            const cplx s = fv[1 + 2 * j][k] + fv[2 + 2 * j][k];
            rk += wgk[j] * s;
            if (j % 2 == 1) rg += wg[j / 2] * s;
        }
        const cplx mean = 0.5 * rk;
        double l1 = wgk[10] * std::abs(fv[0][k]);
        for (int j = 0; j < 10; ++j) l1 += wgk[j] * (std::abs(fv[1 + 2 * j][k]) + std::abs(fv[2 + 2 * j][k]));
        p.l1[k] = l1 * std::abs(h);
        double asc = wgk[10] * std::abs(fv[0][k] - mean);
        for (int j = 0; j < 10; ++j) asc += wgk[j] * (std::abs(fv[1 + 2 * j][k] - mean) + std::abs(fv[2 + 2 * j][k] - mean));
        asc *= std::abs(h);
        double err = std::abs((rk - rg) * h);
        if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
        constexpr double epmach = std::numeric_limits<double>::epsilon();
        err = std::max(err, 50.0 * epmach * std::abs(rk * h));
        p.value[k] = rk * h;
        p.error[k] = err;
    }
    return p;
}

template <std::size_t N, class G>
QuadratureResult<CVec<N>> gk_adaptive(G&& g, double a, double b, const QuadratureOptions& opt)
{
    QuadratureResult<CVec<N>> res;
    res.value.fill(0.0);
    if (a == b) return res;
    std::vector<Panel<N>> panels;
    panels.push_back(gk21<N>(g, a, b));
    res.evaluations = 21;

    CVec<N> total;
    std::array<double, N> errs, l1;
    auto sum_up = [&] {
        total.fill(0.0);
        errs.fill(0.0);
        l1.fill(0.0);
        for (const auto& p : panels)
            for (std::size_t k = 0; k < N; ++k) {
                total[k] += p.value[k];
                errs[k] += p.error[k];
                l1[k] += p.l1[k];
            }
    };
    // cancellation below 64 eps of the integral of |f| cannot be resolved
    constexpr double floor_eps = 64.0 * std::numeric_limits<double>::epsilon();
    auto tolerance = [&](std::size_t k) { return std::max({opt.rel_tol * std::abs(total[k]), opt.abs_tol, floor_eps * l1[k]}); };
    auto done = [&] {
        for (std::size_t k = 0; k < N; ++k)
            if (errs[k] > tolerance(k)) return false;
        return true;
    };

    sum_up();
    while (!done()) {
        if (res.evaluations + 42 > opt.max_evaluations) {
            res.converged = false;
            break;
        }
        std::size_t worst = 0;
        double wmax = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            double w = 0.0;
            for (std::size_t k = 0; k < N; ++k) {
                const double t = tolerance(k);
                w = std::max(w, panels[i].error[k] / (t > 0.0 ? t : std::numeric_limits<double>::min()));
            }
            if (w > wmax) {
                wmax = w;
                worst = i;
            }
        }
        const Panel<N> p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > std::min(p.a, p.b) && mid < std::max(p.a, p.b))) {
            res.converged = false;  // interval cannot be split further
            break;
        }
        panels[worst] = gk21<N>(g, p.a, mid);
        panels.push_back(gk21<N>(g, mid, p.b));
        res.evaluations += 42;
        sum_up();
    }
    res.value = total;
    res.error_estimate = 0.0;
    for (std::size_t k = 0; k < N; ++k) res.error_estimate = std::max({res.error_estimate, errs[k], floor_eps * l1[k]});
    return res;
}

template <class F>
using value_of = std::decay_t<std::invoke_result_t<F&, double>>;

template <class T, std::size_t N>
QuadratureResult<T> unpack_result(const QuadratureResult<CVec<N>>& r)
{
    QuadratureResult<T> out;
    out.value = ValueTraits<T>::unpack(r.value);
    out.error_estimate = r.error_estimate;
    out.evaluations = r.evaluations;
    out.converged = r.converged;
    return out;
}

}  // namespace detail

/// Integral of f over [a, b]. f may return double, complex, or std::array of either.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {})
{
    using T = detail::value_of<F>;
    using Tr = detail::ValueTraits<T>;
    auto g = [&](double x) { return Tr::pack(f(x)); };
    return detail::unpack_result<T, Tr::N>(detail::gk_adaptive<Tr::N>(g, a, b, opt));
}

/// Integral of f over [0, inf) with x = scale t/(1-t).
template <class F>
auto integrate_semiinfinite(F&& f, double scale, const QuadratureOptions& opt = {})
{
    if (!(scale > 0.0)) throw DomainError("semi-infinite map needs a positive scale");
    using T = detail::value_of<F>;
    using Tr = detail::ValueTraits<T>;
    auto g = [&](double t) {
        const double u = 1.0 - t;
        auto v = Tr::pack(f(scale * t / u));
        const double jac = scale / (u * u);
        for (auto& c : v) c *= jac;
        return v;
    };
    return detail::unpack_result<T, Tr::N>(detail::gk_adaptive<Tr::N>(g, 0.0, 1.0, opt));
}

enum class Parity { none, even, odd };

struct ContourOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_evaluations = 200000;
    /// Free-space wavenumber omega/c setting the offsets; 0 picks min(|k_core|, |k_clad|).
    double k_ref = 0.0;
    double lift = 1e-3;    // upper offset beyond the light lines, units of k_ref
    double detour = 1e-2;  // depth below the light-line segment, units of k_ref
    /// Finite upper limit of Re h; 0 integrates to infinity.
    double h_max = 0.0;
    /// Decay scale for the mapped tail when h_max = 0; 0 uses max |k|.
    double tail_scale = 0.0;
    /// Ratio max/median of |f| on the detour that is reported as a path collision.
    double collision_ratio = 1e8;
};

/// Piecewise-linear path for h >= 0 (the negative half is its point reflection).
struct ContourPath {
    std::vector<cplx> vertices;  // last vertex is followed by a horizontal ray unless finite
    bool finite_end = false;
    bool real_axis = false;
    double detour_end = 0.0;  // Re h up to which samples are checked for collisions
};

ContourPath make_contour_path(cplx k_core, cplx k_clad, const ContourOptions& opt);

namespace detail {
double median_of(std::vector<double> v);
}

/// Integral over h in (-inf, inf) below the branch points/poles on the positive real
/// axis and above their mirror images. Parity even/odd halves the work.
template <class F>
auto contour_h_integral(F&& f, cplx k_core, cplx k_clad, Parity parity, const ContourOptions& opt = {})
{
    using T = std::decay_t<std::invoke_result_t<F&, cplx>>;
    using Tr = detail::ValueTraits<T>;
    constexpr std::size_t N = Tr::N;
    using V = detail::CVec<N>;

    QuadratureResult<T> out;
    if (parity == Parity::odd) {
        out.value = Tr::unpack(V{});
        return out;
    }
    const ContourPath path = make_contour_path(k_core, k_clad, opt);
    const double factor = parity == Parity::even ? 2.0 : 1.0;

    // reference level from a uniform scan of the detour; adaptive refinement would bias it
    double detour_median = 0.0;
    if (!path.real_axis) {
        std::vector<double> scan;
        for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
            const cplx p0 = path.vertices[s], p1 = path.vertices[s + 1];
            if (std::max(p0.real(), p1.real()) > path.detour_end) break;
            for (int j = 1; j <= 16; ++j) {
                const cplx h = p0 + (j - 0.5) / 16.0 * (p1 - p0);
                V v = Tr::pack(f(h));
                double m = 0.0;
                for (const auto& c : v) m = std::max(m, std::abs(c));
                scan.push_back(m);
            }
        }
        detour_median = detail::median_of(std::move(scan));
    }
    auto eval = [&](cplx h) {
        V v = Tr::pack(f(h));
        if (parity == Parity::none) {
            const V w = Tr::pack(f(-h));
            for (std::size_t k = 0; k < N; ++k) v[k] += w[k];
        }
        if (detour_median > 0.0 && h.real() <= path.detour_end) {
            double m = 0.0;
            for (const auto& c : v) m = std::max(m, std::abs(c));
            if (m > opt.collision_ratio * detour_median)
                throw PathCollisionError("integrand peak exceeds the path median by more than the collision ratio");
        }
        return v;
    };

    V total{};
    total.fill(0.0);
    QuadratureOptions qo{opt.rel_tol, opt.abs_tol, opt.max_evaluations};
    auto add = [&](const QuadratureResult<V>& r) {
        for (std::size_t k = 0; k < N; ++k) total[k] += r.value[k];
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
    };
    for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
        const cplx p0 = path.vertices[s], d = path.vertices[s + 1] - p0;
        auto seg = [&](double t) {
            V v = eval(p0 + t * d);
            for (auto& c : v) c *= d;
            return v;
        };
        add(detail::gk_adaptive<N>(seg, 0.0, 1.0, qo));
    }
    if (!path.finite_end) {
        const cplx p0 = path.vertices.back();
        double scale = opt.tail_scale;
        if (scale <= 0.0) scale = std::max({std::abs(k_core), std::abs(k_clad), 1e-300});
        auto ray = [&](double t) {
            const double u = 1.0 - t;
            V v = eval(p0 + scale * t / u);
            const double jac = scale / (u * u);
            for (auto& c : v) c *= jac;
            return v;
        };
        add(detail::gk_adaptive<N>(ray, 0.0, 1.0, qo));
    }
    for (auto& c : total) c *= factor;
    out.error_estimate *= factor;
    out.value = Tr::unpack(total);
    return out;
}

/// Root of a real function inside a sign-changing bracket.
double find_root_real(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

enum class ZeroKind { j, j_prime };

struct BesselZero {
    ZeroKind kind;
    int n;
    int m;
    double value;
};

inline constexpr int bessel_zero_table_size = 200;

/// m-th positive zero of J_n (kind j) or J_n' (kind j_prime), n in {0, 1}, 1 <= m <= 200.
BesselZero bessel_zero(ZeroKind kind, int n, int m);

}  // namespace cylvdw::numerics
