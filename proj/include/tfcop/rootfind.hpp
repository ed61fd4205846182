#ifndef TFCOP_ROOTFIND_HPP
#define TFCOP_ROOTFIND_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tfcop {

// Bisection for f monotone on [lo,hi] with a sign change of f(x)-target.
// `increasing` tells which way to move; stops once |f(mid)-target| < ftol
// or the bracket collapses. Caps at max_iter halvings.
inline double bisect_monotone(const std::function<double(double)>& f, double target,
                              double lo, double hi, bool increasing,
                              double ftol = 1e-13, int max_iter = 200) {
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < max_iter; ++i) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::fabs(fm - target) < ftol) return mid;
        const bool go_right = increasing ? (fm < target) : (fm > target);
        if (go_right)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-16) break;
    }
    return 0.5 * (lo + hi);
}

// Central finite difference with one-sided fallback near the ends of [0,1].
inline double fd_derivative(const std::function<double(double)>& f, double t, double h = 1e-6) {
    if (t - h >= 0.0 && t + h <= 1.0) return (f(t + h) - f(t - h)) / (2.0 * h);
    if (t + h <= 1.0) return (f(t + h) - f(t)) / h;
    return (f(t) - f(t - h)) / h;
}

// Aitken delta-squared applied to the last three terms of a sequence of
// estimates; falls back to the last term when the update is ill-conditioned.
inline double aitken_limit(const std::vector<double>& q) {
    const std::size_t n = q.size();
    if (n == 0) throw std::invalid_argument("aitken_limit: empty sequence");
    if (n < 3) return q.back();
    const double q0 = q[n - 3], q1 = q[n - 2], q2 = q[n - 1];
    const double d1 = q2 - q1;
    const double den = d1 - (q1 - q0);
    if (std::fabs(den) < 1e-14 * std::max(1.0, std::fabs(q2))) return q2;
    const double a = q2 - d1 * d1 / den;
    if (!std::isfinite(a)) return q2;
    return a;
}

} // namespace tfcop

#endif
