#include "tfcop/copula.hpp"

#include <cmath>

namespace tfcop {

double fd_du(const Copula& c, double u, double v, double h) {
    if (u - h >= 0.0 && u + h <= 1.0) return (c(u + h, v) - c(u - h, v)) / (2.0 * h);
    if (u + h <= 1.0) return (c(u + h, v) - c(u, v)) / h;
    return (c(u, v) - c(u - h, v)) / h;
}

double fd_dv(const Copula& c, double u, double v, double h) {
    if (v - h >= 0.0 && v + h <= 1.0) return (c(u, v + h) - c(u, v - h)) / (2.0 * h);
    if (v + h <= 1.0) return (c(u, v + h) - c(u, v)) / h;
    return (c(u, v) - c(u, v - h)) / h;
}

double Copula::du(double u, double v) const { return fd_du(*this, u, v); }
double Copula::dv(double u, double v) const { return fd_dv(*this, u, v); }

GridCheckReport check_boundary(const Copula& c, int n, double tol) {
    ViolationTracker t;
    for (double u : uniform_grid(n)) {
        t.observe(-std::fabs(c(u, 0.0)), u, 0.0);
        t.observe(-std::fabs(c(0.0, u)), 0.0, u);
        t.observe(-std::fabs(c(u, 1.0) - u), u, 1.0);
        t.observe(-std::fabs(c(1.0, u) - u), 1.0, u);
    }
    return t.report("boundary", n, tol);
}

GridCheckReport check_frechet_bounds(const Copula& c, int n, double tol) {
    ViolationTracker t;
    const auto g = uniform_grid(n);
    for (double u : g)
        for (double v : g) {
            const double w = c(u, v);
            t.observe(std::min(u, v) - w, u, v);
            t.observe(w - std::max(u + v - 1.0, 0.0), u, v);
        }
    return t.report("frechet-bounds", n, tol);
}

GridCheckReport check_two_increasing(const Copula& c, int n, double tol) {
    const auto g = uniform_grid(n);
    const std::size_t m = g.size();
    std::vector<double> vals(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) vals[i * m + j] = c(g[i], g[j]);
    ViolationTracker t;
    for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = 0; j + 1 < m; ++j) {
            const double vol = vals[(i + 1) * m + j + 1] - vals[(i + 1) * m + j] -
                               vals[i * m + j + 1] + vals[i * m + j];
            t.observe(vol, g[i], g[j], g[i + 1], g[j + 1]);
        }
    return t.report("two-increasing", n, tol);
}

GridCheckReport check_exchangeable(const Copula& c, int n, double tol) {
    ViolationTracker t;
    const auto g = uniform_grid(n);
    for (double u : g)
        for (double v : g) t.observe(-std::fabs(c(u, v) - c(v, u)), u, v);
    return t.report("exchangeable", n, tol);
}

} // namespace tfcop
