#include "tfcop/archimedean.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tfcop/rootfind.hpp"

namespace tfcop {

double ArchimedeanGenerator::at0() const {
    return strict ? std::numeric_limits<double>::infinity() : value(0.0);
}

double ArchimedeanGenerator::pseudo_inverse(double s) const {
    if (s <= 0.0) return 1.0;
    if (s >= at0()) return 0.0;
    if (inverse) return clamp_unit(inverse(s));
    // value is decreasing; bisect on [0,1].
    return bisect_monotone([this](double t) { return value(t); }, s, 0.0, 1.0,
                           /*increasing=*/false);
}

double ArchimedeanGenerator::deriv_or_fd(double t) const {
    if (deriv) return deriv(t);
    return fd_derivative([this](double x) { return value(x); }, t);
}

ArchimedeanGenerator independence_generator() {
    ArchimedeanGenerator g;
    g.label = "log";
    g.value = [](double t) { return -std::log(t); };
    g.deriv = [](double t) { return -1.0 / t; };
    g.inverse = [](double s) { return std::exp(-s); };
    g.strict = true;
    return g;
}

ArchimedeanGenerator clayton_generator(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("clayton generator: alpha must be positive");
    ArchimedeanGenerator g;
    g.label = "clayton(" + std::to_string(alpha) + ")";
    g.value = [alpha](double t) { return std::pow(t, -alpha) - 1.0; };
    g.deriv = [alpha](double t) { return -alpha * std::pow(t, -alpha - 1.0); };
    g.inverse = [alpha](double s) { return std::pow(1.0 + s, -1.0 / alpha); };
    g.strict = true;
    return g;
}

ArchimedeanGenerator gumbel_generator(double beta) {
    if (!(beta >= 1.0)) throw std::domain_error("gumbel generator: beta must be >= 1");
    ArchimedeanGenerator g;
    g.label = "gumbel(" + std::to_string(beta) + ")";
    g.value = [beta](double t) { return std::pow(-std::log(t), beta); };
    g.deriv = [beta](double t) { return -beta * std::pow(-std::log(t), beta - 1.0) / t; };
    g.inverse = [beta](double s) { return std::exp(-std::pow(s, 1.0 / beta)); };
    g.strict = true;
    return g;
}

ArchimedeanGenerator frank_generator(double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("frank generator: gamma must be positive");
    const double den = std::expm1(-gamma);
    ArchimedeanGenerator g;
    g.label = "frank(" + std::to_string(gamma) + ")";
    g.value = [gamma, den](double t) { return -std::log(std::expm1(-gamma * t) / den); };
    g.deriv = [gamma](double t) {
        return -gamma * std::exp(-gamma * t) / -std::expm1(-gamma * t);
    };
    g.inverse = [gamma, den](double s) {
        return -std::log1p(den * std::exp(-s)) / gamma;
    };
    g.strict = true;
    return g;
}

ArchimedeanGenerator frechet_lower_generator() {
    ArchimedeanGenerator g;
    g.label = "linear";
    g.value = [](double t) { return 1.0 - t; };
    g.deriv = [](double) { return -1.0; };
    g.inverse = [](double s) { return 1.0 - s; };
    g.strict = false;
    return g;
}

GridCheckReport check_generator(const ArchimedeanGenerator& gen, int n, double tol) {
    ViolationTracker t;
    // Strict generators blow up at 0; sample away from it.
    const double lo = gen.strict ? 1e-6 : 0.0;
    std::vector<double> ts(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        ts[static_cast<std::size_t>(i)] = lo + (1.0 - lo) * static_cast<double>(i) / n;
    std::vector<double> vals(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) vals[i] = gen.value(ts[i]);
    t.observe(-std::fabs(vals.back()), 1.0); // value(1) = 0
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
        t.observe(vals[i] - vals[i + 1], ts[i]); // strictly decreasing
    for (std::size_t i = 1; i + 1 < vals.size(); ++i)
        t.observe(vals[i - 1] + vals[i + 1] - 2.0 * vals[i], ts[i]); // convex
    return t.report("generator", n, tol);
}

namespace {

class ArchimedeanCopula final : public Copula {
  public:
    explicit ArchimedeanCopula(ArchimedeanGenerator gen) : gen_(std::move(gen)) {}

    double du(double u, double v) const override {
        if (!gen_.deriv) return Copula::du(u, v);
        u = clamp_unit(u);
        v = clamp_unit(v);
        if (u <= 0.0 || v <= 0.0) return 0.0;
        const double w = (*this)(u, v);
        if (w <= 0.0) return 0.0;
        return gen_.deriv(u) / gen_.deriv(w);
    }
    double dv(double u, double v) const override { return du(v, u); }
    bool has_analytic_partials() const override { return static_cast<bool>(gen_.deriv); }
    const ArchimedeanGenerator* generator() const override { return &gen_; }
    std::string name() const override { return "archimedean[" + gen_.label + "]"; }

  protected:
    double value(double u, double v) const override {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        return gen_.pseudo_inverse(gen_.value(u) + gen_.value(v));
    }

  private:
    ArchimedeanGenerator gen_;
};

} // namespace

CopulaPtr make_archimedean(ArchimedeanGenerator gen) {
    if (!gen.value) throw std::invalid_argument("make_archimedean: generator has no value function");
    const auto rep = check_generator(gen);
    if (!rep.passed)
        throw std::invalid_argument("make_archimedean: generator fails " + rep.check +
                                    " sampling (worst violation " +
                                    std::to_string(rep.worst_violation) + ")");
    return std::make_shared<ArchimedeanCopula>(std::move(gen));
}

} // namespace tfcop
