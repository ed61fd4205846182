#include "tfcop/generator_pair.hpp"

#include <cmath>
#include <stdexcept>

namespace tfcop {

GridCheckReport check_order_condition(const GeneratorPair& p, const Copula& base, int n,
                                      double tol) {
    ViolationTracker t;
    const auto g = uniform_grid(n);
    std::vector<double> phis(g.size()), psis(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        phis[i] = p.phi(g[i]);
        psis[i] = p.psi(g[i]);
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j)
            t.observe(base(phis[j], psis[i]) - base(phis[i], psis[j]), g[i], g[j]);
    return t.report("order-condition", n, tol);
}

GridCheckReport check_ratio_increasing(const GeneratorPair& p, int n, double tol, double eps) {
    ViolationTracker t;
    double prev_t = eps;
    double prev = p.phi(prev_t) / p.psi(prev_t);
    for (int i = 1; i <= n; ++i) {
        const double x = eps + (1.0 - eps) * static_cast<double>(i) / n;
        const double cur = p.phi(x) / p.psi(x);
        t.observe(cur - prev, prev_t, x);
        prev = cur;
        prev_t = x;
    }
    return t.report("ratio-increasing", n, tol);
}

GeneratorPair compose(const GeneratorPair& p, const MonotoneMap& f) {
    const auto rep = check_phi_membership(f);
    if (!rep.passed)
        throw std::invalid_argument("compose: map is not strictly increasing onto 1 (worst " +
                                    std::to_string(rep.worst_violation) + ")");
    return {MonotoneMap::composed(p.phi, f), MonotoneMap::composed(p.psi, f)};
}

namespace {

void require_same(const MonotoneMap& a, const MonotoneMap& b, const char* what) {
    for (int i = 0; i <= 200; ++i) {
        const double t = static_cast<double>(i) / 200;
        if (std::fabs(a(t) - b(t)) > 1e-12)
            throw std::invalid_argument(std::string("pair maxima: the shared ") + what +
                                        " components differ");
    }
}

} // namespace

GeneratorPair max_phi(const GeneratorPair& a, const GeneratorPair& b) {
    require_same(a.psi, b.psi, "psi");
    return {MonotoneMap::pointwise_max(a.phi, b.phi), a.psi};
}

GeneratorPair max_psi(const GeneratorPair& a, const GeneratorPair& b) {
    require_same(a.phi, b.phi, "phi");
    return {a.phi, MonotoneMap::pointwise_max(a.psi, b.psi)};
}

} // namespace tfcop
