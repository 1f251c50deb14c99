#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "steiner/face.hpp"

namespace steiner {

/// Constants of the limiting laws nu_{d,k} (Delta^+) and mu_{d,k} (adjacency).
struct LimitLawParams {
    int d = 1;
    int k = 3;
    double omega = 0; ///< 2 sqrt(d(k-1))
    double e1 = 0;    ///< k-1+d
    double e2 = 0;    ///< d(k-1)+1
    double t = 0;
    double r1 = 0; ///< 2d/omega
    double r2 = 0; ///< 2/omega
    double sqrt_e1 = 0; ///< sqrt(e1^2 - omega^2) = k-1-d
    double sqrt_e2 = 0; ///< sqrt(e2^2 - omega^2) = d(k-1)-1
    double I_lo = 0, I_hi = 0;
    double J_lo = 0, J_hi = 0;

    LimitLawParams() = default;
    LimitLawParams(int d_, int k_) : d(d_), k(k_) {
        if (d < 1 || k < d + 1) throw ValidationError("limit law needs d >= 1 and k >= d+1");
        const double dd = d, kk = k;
        omega = 2.0 * std::sqrt(dd * (kk - 1));
        e1 = kk - 1 + dd;
        e2 = dd * (kk - 1) + 1;
        const double q = omega / e1;
        t = (1.0 - std::sqrt(std::max(0.0, 1.0 - q * q))) / q;
        r1 = 2.0 * dd / omega;
        r2 = 2.0 / omega;
        sqrt_e1 = kk - 1 - dd;
        sqrt_e2 = dd * (kk - 1) - 1;
        I_lo = std::pow(std::sqrt(kk - 1) - std::sqrt(dd), 2);
        I_hi = std::pow(std::sqrt(kk - 1) + std::sqrt(dd), 2);
        J_lo = -dd + 1 - 2 * std::sqrt((kk - 1) * dd);
        J_hi = -dd + 1 + 2 * std::sqrt((kk - 1) * dd);
    }
};

/// Density of nu_{d,k} at x; zero off I_{d,k}.
inline double nu_density(const LimitLawParams& p, double x) {
    const double s = p.omega * p.omega - (p.e1 - x) * (p.e1 - x);
    if (x <= 0 || s <= 0) return 0.0;
    return p.k * std::sqrt(s) / (2 * std::numbers::pi * x * ((p.d + 1.0) * p.k - x));
}

/// Density of mu_{d,k}: the image of nu under x -> k - x.
inline double mu_density(const LimitLawParams& p, double x) { return nu_density(p, p.k - x); }

namespace detail {

// int f(x) dnu(x) after x = e1 - omega cos(theta); the Jacobian cancels both
// square-root endpoint singularities.
template <class F>
double nu_integral(const LimitLawParams& p, F f, double tol = 1e-14) {
    const double c = p.k * p.omega * p.omega / (2 * std::numbers::pi);
    auto g = [&](double th) {
        const double s = std::sin(th);
        const double h = std::sin(th / 2), g = std::cos(th / 2);
        const double x = (p.e1 - p.omega) + 2 * p.omega * h * h;
        const double y = ((p.d + 1.0) * p.k - p.e1 - p.omega) + 2 * p.omega * g * g; // (d+1)k - x
        return c * s * s * f(x) / (x * y);
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, std::numbers::pi, 20, tol);
}

} // namespace detail

/// int x^l dnu_{d,k}.
inline double nu_moment(const LimitLawParams& p, int l) {
    if (l < 0 || l > 12) throw ValidationError("moment order must lie in [0,12]");
    return detail::nu_integral(p, [l](double x) { return std::pow(x, l); });
}

/// int x^l dmu_{d,k} = int (k-x)^l dnu_{d,k}.
inline double mu_moment(const LimitLawParams& p, int l) {
    if (l < 0 || l > 12) throw ValidationError("moment order must lie in [0,12]");
    const double k = p.k;
    return detail::nu_integral(p, [l, k](double x) { return std::pow(k - x, l); });
}

inline double nu_mass(const LimitLawParams& p) { return nu_moment(p, 0); }

/// log xi_{d,k} = (k-1)log(k-1) - (k/(d+1)-1) log(k-1-d) - ((d(k-1)-1)/(d+1)) log k.
inline double log_xi_closed_form(int d, int k) {
    if (d < 1 || k <= d + 1) throw ValidationError("closed form needs k >= d+2");
    const double dd = d, kk = k;
    return (kk - 1) * std::log(kk - 1) - (kk / (dd + 1) - 1) * std::log(kk - 1 - dd) -
           ((dd * (kk - 1) - 1) / (dd + 1)) * std::log(kk);
}

inline double xi_closed_form(int d, int k) { return std::exp(log_xi_closed_form(d, k)); }

/// int log t dnu_{d,k}(t) by adaptive Gauss-Kronrod.
inline double log_xi_quadrature(int d, int k) {
    const LimitLawParams p(d, k);
    return detail::nu_integral(p, [](double x) { return std::log(x); }, 1e-13);
}

inline double xi_quadrature(int d, int k) { return std::exp(log_xi_quadrature(d, k)); }

/// T_m(x) by the three-term recurrence.
inline double chebyshev_T(int m, double x) {
    if (m < 0) throw ValidationError("Chebyshev index must be >= 0");
    if (m == 0) return 1.0;
    double a = 1.0, b = x;
    for (int i = 1; i < m; ++i) {
        const double c = 2 * x * b - a;
        a = b;
        b = c;
    }
    return b;
}

/// Coefficient of T_n in the expansion of the law of y = (e1 - x)/omega.
inline double cheb_alpha(const LimitLawParams& p, int n) {
    if (p.k < p.d + 2) throw ValidationError("Chebyshev coefficients need k >= d+2");
    if (n < 0) throw ValidationError("Chebyshev index must be >= 0");
    if (n == 0) return 1.0 / std::numbers::pi;
    const double sgn = (n % 2) ? -1.0 : 1.0;
    return -(p.sqrt_e1 * std::pow(p.r1, n) + p.sqrt_e2 * sgn * std::pow(p.r2, n)) / (std::numbers::pi * (p.d + 1.0));
}

struct ChebyshevPlan {
    double ratio = 0; ///< max(r1, r2)
    int N = 0;        ///< truncation order
};

inline ChebyshevPlan chebyshev_plan(const LimitLawParams& p) {
    ChebyshevPlan c;
    c.ratio = std::max(p.r1, p.r2);
    c.N = static_cast<int>(std::ceil(15.0 / -std::log10(c.ratio))) + 5;
    return c;
}

/// log e1 - log(1+t^2) - pi sum_{n=1}^{N} alpha_n t^n / n.
inline double log_xi_chebyshev_series(const LimitLawParams& p, int N) {
    double s = 0;
    double tn = 1;
    for (int n = 1; n <= N; ++n) {
        tn *= p.t;
        s += cheb_alpha(p, n) * tn / n;
    }
    return std::log(p.e1) - std::log1p(p.t * p.t) - std::numbers::pi * s;
}

/// Summed form of the same series.
inline double log_xi_chebyshev_closed(const LimitLawParams& p) {
    const double c = p.d + 1.0;
    return std::log(p.e1) - std::log1p(p.t * p.t) - (p.sqrt_e1 / c) * std::log1p(-p.r1 * p.t) -
           (p.sqrt_e2 / c) * std::log1p(p.r2 * p.t);
}

/// xi through the Chebyshev expansion; the truncated series and its sum must
/// agree to 1e-10 in log.
inline double xi_chebyshev(int d, int k) {
    const LimitLawParams p(d, k);
    if (k < d + 2) throw ValidationError("Chebyshev route needs k >= d+2");
    const double closed = log_xi_chebyshev_closed(p);
    const double series = log_xi_chebyshev_series(p, chebyshev_plan(p).N);
    if (std::abs(closed - series) > 1e-10)
        throw std::logic_error("Chebyshev series and closed sum disagree for d=" + std::to_string(d) +
                               " k=" + std::to_string(k));
    return std::exp(closed);
}

} // namespace steiner
