#ifndef TFCOP_QUADRATURE_HPP
#define TFCOP_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

namespace tfcop {

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double m, double fm, double whole,
                            double tol, int depth, bool& converged) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    // Tolerance halves on each split; the floor lets integrable endpoint
    // kinks terminate instead of chasing noise below machine precision.
    if (std::fabs(delta) <= 15.0 * std::max(tol, 1e-15)) return left + right + delta / 15.0;
    if (depth <= 0) {
        converged = false;
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, converged) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, converged);
}

} // namespace detail

// Adaptive Simpson quadrature on [a,b]. Throws when the refinement budget is
// exhausted before the local error bound is met.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-9, int max_depth = 30) {
    if (!(b >= a)) throw std::invalid_argument("adaptive_simpson: inverted interval");
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = detail::simpson(a, fa, b, fb, fm);
    bool converged = true;
    const double r = detail::adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth, converged);
    if (!converged) throw std::runtime_error("adaptive_simpson: refinement budget exhausted");
    return r;
}

} // namespace tfcop

#endif
