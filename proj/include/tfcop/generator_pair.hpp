#ifndef TFCOP_GENERATOR_PAIR_HPP
#define TFCOP_GENERATOR_PAIR_HPP

#include "tfcop/copula.hpp"
#include "tfcop/monotone_map.hpp"

namespace tfcop {

// The two argument distortions of a transform: `phi` acts on the smaller
// coordinate (and supplies the outer pseudo-inverse), `psi` on the larger.
struct GeneratorPair {
    MonotoneMap phi;
    MonotoneMap psi;
};

// Ordering condition: C(phi(u), psi(v)) <= C(phi(v), psi(u)) for all u <= v,
// sampled on the triangular grid. This is what certifies the transform.
GridCheckReport check_order_condition(const GeneratorPair& p, const Copula& base, int n = 200,
                                      double tol = 1e-10);

// The ratio phi(t)/psi(t) non-decreasing on (eps, 1], sampled. A sufficient
// route to the ordering condition for supermigrative bases.
GridCheckReport check_ratio_increasing(const GeneratorPair& p, int n = 1000, double tol = 1e-10,
                                       double eps = 1e-6);

// Post-composition with a strictly increasing f, f(1)=1: preserves the
// ordering condition. Throws when f fails that admissibility sampling.
GeneratorPair compose(const GeneratorPair& p, const MonotoneMap& f);

// Branch-wise maxima, which also preserve the ordering condition. The
// untouched component of the two inputs must agree on a sampled grid.
GeneratorPair max_phi(const GeneratorPair& a, const GeneratorPair& b);
GeneratorPair max_psi(const GeneratorPair& a, const GeneratorPair& b);

} // namespace tfcop

#endif
