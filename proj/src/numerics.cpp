#include "cylvdw/numerics.hpp"

#include <boost/math/tools/roots.hpp>

#include "cylvdw/specfun.hpp"

namespace cylvdw::numerics {

ContourPath make_contour_path(cplx k_core, cplx k_clad, const ContourOptions& opt)
{
    ContourPath path;
    double kref = opt.k_ref;
    if (kref <= 0.0) kref = std::min(std::abs(k_core), std::abs(k_clad));
    if (!(kref > 0.0)) throw DomainError("contour needs a nonzero reference wavenumber");
    const double depth = opt.detour * kref;
    const double lift = opt.lift * kref;

    // Branch points close to the real axis need the detour. The path passes below
    // singularities on the side of Re k and above their mirror images.
    bool near_axis = false;
    double kmax = 0.0, side = 1.0;
    for (cplx k : {k_core, k_clad}) {
        if (std::abs(k.real()) > 0.0 && k.imag() < 10.0 * depth) near_axis = true;
        if (std::abs(k.real()) > kmax) {
            kmax = std::abs(k.real());
            side = k.real() > 0.0 ? 1.0 : -1.0;
        }
    }

    if (!near_axis) {
        path.real_axis = true;
        path.vertices = {0.0};
        if (opt.h_max > 0.0) {
            path.vertices.push_back(opt.h_max);
            path.finite_end = true;
        }
        return path;
    }

    const double turn = 1.1 * kmax;
    path.vertices = {cplx(0.0, 0.0), cplx(0.0, -side * depth), cplx(turn, -side * depth), cplx(turn, side * lift)};
    path.detour_end = turn;
    if (opt.h_max > turn) {
        path.vertices.push_back(cplx(opt.h_max, side * lift));
        path.finite_end = true;
    }
    return path;
}

namespace detail {
double median_of(std::vector<double> v)
{
    if (v.empty()) return 0.0;
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}
}  // namespace detail

double find_root_real(const std::function<double(double)>& f, double lo, double hi, double tol)
{
    if (lo > hi) std::swap(lo, hi);
    const double flo = f(lo), fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi)) throw EvaluationError("non-finite function value at the bracket ends");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) throw NoSignChangeError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    std::uintmax_t iters = 200;
    auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
    return 0.5 * (r.first + r.second);
}

namespace {

double jn_real(int n, double x)
{
    return specfun::bessel_j(n, x).real();
}

double jn_prime_real(int n, double x)
{
    return specfun::bessel_j_prime(n, x).real();
}

std::vector<double> build_table(ZeroKind kind, int n)
{
    // McMahon estimates, refined inside a bracket narrower than the zero spacing
    std::vector<double> t;
    t.reserve(bessel_zero_table_size);
    const double mu = 4.0 * n * n;
    auto fn = [kind, n](double x) { return kind == ZeroKind::j ? jn_real(n, x) : jn_prime_real(n, x); };
    double prev = 0.0;
    for (int m = 1; m <= bessel_zero_table_size; ++m) {
        double guess;
        if (kind == ZeroKind::j) {
            const double b = (m + 0.5 * n - 0.25) * pi;
            guess = b - (mu - 1.0) / (8.0 * b);
        } else {
            // J0' = -J1: its positive zeros are those of J1
            const double b = n == 0 ? (m + 0.25) * pi : (m + 0.5 * n - 0.75) * pi;
            guess = n == 0 ? b - 3.0 / (8.0 * b) : b - (mu + 3.0) / (8.0 * b);
        }
        double lo = std::max(guess - 0.7, prev + 1e-3), hi = guess + 0.7;
        while ((fn(lo) < 0.0) == (fn(hi) < 0.0)) hi += 0.1;
        const double r = find_root_real(fn, lo, hi, 4e-16 * hi);
        t.push_back(r);
        prev = r;
    }
    return t;
}

const std::vector<double>& table(ZeroKind kind, int n)
{
    static const std::vector<double> j0 = build_table(ZeroKind::j, 0);
    static const std::vector<double> j1 = build_table(ZeroKind::j, 1);
    static const std::vector<double> d0 = build_table(ZeroKind::j_prime, 0);
    static const std::vector<double> d1 = build_table(ZeroKind::j_prime, 1);
    if (kind == ZeroKind::j) return n == 0 ? j0 : j1;
    return n == 0 ? d0 : d1;
}

}  // namespace

BesselZero bessel_zero(ZeroKind kind, int n, int m)
{
    if (n != 0 && n != 1) throw DomainError("Bessel zero tables exist for n = 0, 1 only");
    if (m < 1 || m > bessel_zero_table_size) throw DomainError("zero index m outside 1.." + std::to_string(bessel_zero_table_size));
    return {kind, n, m, table(kind, n)[static_cast<std::size_t>(m - 1)]};
}

}  // namespace cylvdw::numerics
