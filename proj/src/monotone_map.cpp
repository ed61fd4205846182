#include "tfcop/monotone_map.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "tfcop/rootfind.hpp"
#include "tfcop/unit_value.hpp"

namespace tfcop {

double MonotoneMap::operator()(double t) const { return f_(clamp_unit(t)); }

double MonotoneMap::deriv(double t) const {
    t = clamp_unit(t);
    if (df_) return df_(t);
    return fd_derivative(f_, t);
}

double MonotoneMap::inverse(double y) const {
    if (y < f0_ - kUnitTol || y > 1.0 + kUnitTol)
        throw std::domain_error("monotone map inverse: value outside [f(0),1]");
    if (y <= f0_) return 0.0;
    if (y >= 1.0) return 1.0;
    if (inv_) return clamp_unit(inv_(y));
    return bisect_monotone(f_, y, 0.0, 1.0, /*increasing=*/true);
}

double MonotoneMap::pseudo_inverse(double y) const {
    if (y <= f0_) return 0.0;
    return inverse(std::min(y, 1.0));
}

MonotoneMap MonotoneMap::identity() {
    MonotoneMap m;
    m.kind_ = MapKind::Identity;
    m.label_ = "id";
    m.f_ = [](double t) { return t; };
    m.df_ = [](double) { return 1.0; };
    m.inv_ = [](double y) { return y; };
    m.f0_ = 0.0;
    return m;
}

MonotoneMap MonotoneMap::power(double beta) {
    if (!(beta > 0.0)) throw std::domain_error("power map: beta must be positive");
    MonotoneMap m;
    m.kind_ = MapKind::Power;
    m.params_ = {beta};
    m.label_ = "pow(" + std::to_string(beta) + ")";
    m.f_ = [beta](double t) { return std::pow(t, beta); };
    m.df_ = [beta](double t) { return beta * std::pow(t, beta - 1.0); };
    m.inv_ = [beta](double y) { return std::pow(y, 1.0 / beta); };
    m.f0_ = 0.0;
    return m;
}

MonotoneMap MonotoneMap::ca_shape(double beta, double gamma) {
    if (!(beta > 0.0 && beta <= 1.0) || !(gamma >= 0.0 && gamma <= beta))
        throw std::domain_error("ca-shape map: need 0 < beta <= 1 and 0 <= gamma <= beta");
    MonotoneMap m;
    m.kind_ = MapKind::CaShape;
    m.params_ = {beta, gamma};
    m.label_ = "ca-shape(" + std::to_string(beta) + "," + std::to_string(gamma) + ")";
    m.f_ = [beta, gamma](double t) {
        return t <= 0.0 ? 0.0 : std::pow(t, beta) * (2.0 - std::pow(t, gamma));
    };
    m.df_ = [beta, gamma](double t) {
        return 2.0 * beta * std::pow(t, beta - 1.0) -
               (beta + gamma) * std::pow(t, beta + gamma - 1.0);
    };
    m.f0_ = 0.0;
    return m;
}

MonotoneMap MonotoneMap::affine(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("affine map: alpha must lie in [0,1)");
    MonotoneMap m;
    m.kind_ = MapKind::Affine;
    m.params_ = {alpha};
    m.label_ = "affine(" + std::to_string(alpha) + ")";
    m.f_ = [alpha](double t) { return (1.0 - alpha) * t + alpha; };
    m.df_ = [alpha](double) { return 1.0 - alpha; };
    m.inv_ = [alpha](double y) { return (y - alpha) / (1.0 - alpha); };
    m.f0_ = alpha;
    return m;
}

MonotoneMap MonotoneMap::exp_linear(double c) {
    if (!(c > 0.0)) throw std::domain_error("exp-linear map: c must be positive");
    MonotoneMap m;
    m.kind_ = MapKind::ExpLinear;
    m.params_ = {c};
    m.label_ = "exp-linear(" + std::to_string(c) + ")";
    m.f_ = [c](double t) { return std::exp(-c * (1.0 - t)); };
    m.df_ = [c](double t) { return c * std::exp(-c * (1.0 - t)); };
    m.inv_ = [c](double y) { return 1.0 + std::log(y) / c; };
    m.f0_ = std::exp(-c);
    return m;
}

MonotoneMap MonotoneMap::tabulated(std::vector<double> values, std::string label) {
    if (values.size() < 2) throw std::domain_error("tabulated map: need at least two values");
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i + 1] < values[i]) throw std::domain_error("tabulated map: values must not decrease");
    if (std::fabs(values.back() - 1.0) > kUnitTol)
        throw std::domain_error("tabulated map: last value must be 1");
    values.back() = 1.0;
    MonotoneMap m;
    m.kind_ = MapKind::Tabulated;
    m.label_ = std::move(label);
    m.f0_ = values.front();
    const auto tab = std::make_shared<std::vector<double>>(std::move(values));
    m.f_ = [tab](double t) {
        const double x = t * static_cast<double>(tab->size() - 1);
        const std::size_t i = std::min(static_cast<std::size_t>(x), tab->size() - 2);
        const double w = x - static_cast<double>(i);
        return (*tab)[i] * (1.0 - w) + (*tab)[i + 1] * w;
    };
    return m;
}

MonotoneMap MonotoneMap::custom(std::function<double(double)> f,
                                std::function<double(double)> df, std::string label) {
    if (!f) throw std::domain_error("custom map: callable required");
    MonotoneMap m;
    m.kind_ = MapKind::Custom;
    m.label_ = std::move(label);
    m.f0_ = f(0.0);
    m.f_ = std::move(f);
    m.df_ = std::move(df);
    return m;
}

MonotoneMap MonotoneMap::composed(const MonotoneMap& outer, const MonotoneMap& inner) {
    MonotoneMap m;
    m.kind_ = MapKind::Composite;
    m.label_ = outer.label_ + " o " + inner.label_;
    m.f0_ = outer.f_(inner.f0_);
    const MonotoneMap o = outer, in = inner;
    m.f_ = [o, in](double t) { return o.f_(in.f_(t)); };
    if (outer.df_ && inner.df_)
        m.df_ = [o, in](double t) { return o.df_(in.f_(t)) * in.df_(t); };
    m.inv_ = [o, in](double y) { return in.inverse(o.inverse(y)); };
    return m;
}

MonotoneMap MonotoneMap::pointwise_max(const MonotoneMap& a, const MonotoneMap& b) {
    MonotoneMap m;
    m.kind_ = MapKind::PointwiseMax;
    m.label_ = "max(" + a.label_ + "," + b.label_ + ")";
    m.f0_ = std::max(a.f0_, b.f0_);
    const MonotoneMap ca = a, cb = b;
    m.f_ = [ca, cb](double t) { return std::max(ca.f_(t), cb.f_(t)); };
    // Derivative of the attaining branch; ties resolve to the first map.
    m.df_ = [ca, cb](double t) {
        return ca.f_(t) >= cb.f_(t) ? ca.deriv(t) : cb.deriv(t);
    };
    return m;
}

GridCheckReport check_increasing(const MonotoneMap& m, int n, bool strict, double tol) {
    ViolationTracker t;
    const auto g = uniform_grid(n);
    double prev = m(g[0]);
    bool ok = true;
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double cur = m(g[i]);
        const double diff = cur - prev;
        t.observe(diff, g[i - 1], g[i]);
        if (strict ? !(diff > 0.0) : diff < -tol) ok = false;
        prev = cur;
    }
    auto rep = t.report(strict ? "strictly-increasing" : "non-decreasing", n, tol);
    rep.passed = ok;
    return rep;
}

GridCheckReport check_concave(const MonotoneMap& m, int n, double tol) {
    ViolationTracker t;
    const auto g = uniform_grid(n);
    for (std::size_t i = 1; i + 1 < g.size(); ++i)
        t.observe(-(m(g[i - 1]) + m(g[i + 1]) - 2.0 * m(g[i])), g[i]);
    return t.report("concave", n, tol);
}

GridCheckReport check_phi_membership(const MonotoneMap& m, int n, bool require_concave, double tol) {
    auto inc = check_increasing(m, n, /*strict=*/true, tol);
    const double end_err = std::fabs(m(1.0) - 1.0);
    bool ok = inc.passed && end_err <= 1e-12;
    double worst = std::min(inc.worst_violation, -end_err);
    auto loc = inc.worst_location;
    if (require_concave) {
        const auto cc = check_concave(m, n, tol);
        ok = ok && cc.passed;
        if (cc.worst_violation < worst) {
            worst = cc.worst_violation;
            loc = cc.worst_location;
        }
    }
    GridCheckReport rep;
    rep.check = require_concave ? "phi-membership+concave" : "phi-membership";
    rep.grid_size = n;
    rep.tolerance = tol;
    rep.worst_violation = worst;
    rep.worst_location = loc;
    rep.passed = ok;
    return rep;
}

GridCheckReport check_psi_membership(const MonotoneMap& m, int n, double tol) {
    auto inc = check_increasing(m, n, /*strict=*/false, tol);
    const double end_err = std::fabs(m(1.0) - 1.0);
    GridCheckReport rep;
    rep.check = "psi-membership";
    rep.grid_size = n;
    rep.tolerance = tol;
    rep.worst_violation = std::min(inc.worst_violation, -end_err);
    rep.worst_location = inc.worst_location;
    rep.passed = inc.passed && end_err <= 1e-12;
    return rep;
}

} // namespace tfcop
