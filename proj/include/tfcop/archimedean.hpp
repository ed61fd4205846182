#ifndef TFCOP_ARCHIMEDEAN_HPP
#define TFCOP_ARCHIMEDEAN_HPP

#include <functional>
#include <optional>
#include <string>

#include "tfcop/copula.hpp"

namespace tfcop {

// Additive generator: continuous, strictly decreasing, convex on [0,1] with
// value(1) = 0. Strict generators diverge at 0. `deriv` and `inverse` are
// optional closed forms; numeric fallbacks are used when absent.
struct ArchimedeanGenerator {
    std::string label;
    std::function<double(double)> value;
    std::function<double(double)> deriv;   // may be empty
    std::function<double(double)> inverse; // may be empty
    bool strict = false;

    // value(0); +infinity for strict generators.
    double at0() const;
    // Pseudo-inverse: value^{-1} on [0, at0()], 0 beyond.
    double pseudo_inverse(double s) const;
    double deriv_or_fd(double t) const;
};

ArchimedeanGenerator independence_generator();          // -log t
ArchimedeanGenerator clayton_generator(double alpha);   // t^-alpha - 1, alpha > 0
ArchimedeanGenerator gumbel_generator(double beta);     // (-log t)^beta, beta >= 1
ArchimedeanGenerator frank_generator(double gamma);     // -log((e^{-gamma t}-1)/(e^{-gamma}-1)), gamma > 0
ArchimedeanGenerator frechet_lower_generator();         // 1 - t (non-strict)

// C(u,v) = gen^{[-1]}(gen(u) + gen(v)). Construction samples the generator
// for monotonicity, convexity and gen(1)=0 and rejects bad inputs.
CopulaPtr make_archimedean(ArchimedeanGenerator gen);

// Sampled validation used by make_archimedean; exposed for direct use.
GridCheckReport check_generator(const ArchimedeanGenerator& gen, int n = 1000, double tol = 1e-10);

} // namespace tfcop

#endif
