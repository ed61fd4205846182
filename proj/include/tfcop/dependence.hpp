#ifndef TFCOP_DEPENDENCE_HPP
#define TFCOP_DEPENDENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tfcop/copula.hpp"
#include "tfcop/generator_pair.hpp"
#include "tfcop/sampling.hpp"

namespace tfcop {

enum class TailSide { Upper, Lower };

// Diagonal-quotient estimate of a tail dependence coefficient, extrapolated
// from a ladder of epsilons. `converged` is false when the last two
// extrapolations disagree by more than 1e-3.
struct TailReport {
    TailSide side = TailSide::Upper;
    double lambda = 0.0;
    std::vector<double> eps;
    std::vector<double> quotients;
    bool converged = true;
    std::string note;
};

TailReport tail_lambda_numeric(const Copula& c, TailSide side,
                               std::vector<double> eps = {});

// Which closed-form case applies to a transform's tail.
//   UpperB1:       1-psi ~ 1-phi at 1         -> 2 - (2 - l_base)^{1/alpha}
//   UpperBaseZero: l_base = 0, b in [0,1]     -> 2 - (1 + b)^{1/alpha}
//   LowerB1:       phi ~ psi at 0             -> l_base^{1/alpha}
//   LowerBaseZero: l_base = 0, b in (0,1]     -> 0
// alpha is the local power order of phi: at 1 via 1-phi(t) ~ a (1-t)^alpha,
// at 0 via phi(t) ~ a t^alpha.
enum class TailCase { UpperB1, UpperBaseZero, LowerB1, LowerBaseZero };

struct TailCaseInputs {
    TailCase tag = TailCase::UpperB1;
    double alpha_exp = 1.0;
    double a = 1.0;
    double b = 1.0;
};

// Closed-form transform coefficient; throws std::invalid_argument when the
// inputs sit outside the stated case (mismatched b range, or a base lambda
// incompatible with a *BaseZero tag).
double tail_lambda_transformed(double base_lambda, const TailCaseInputs& in);

// Numeric (alpha, a, b) for the maps on the requested side; the tag is set
// to the B1 case when b lands within 1e-3 of 1, else the BaseZero case.
TailCaseInputs estimate_tail_inputs(const GeneratorPair& pair, TailSide side,
                                    std::vector<double> eps = {});

// Lower coefficient of the affine-psi construction over the theta-perturbed
// product base: alpha0 (1 + (1-alpha0) theta). This case has b = 0 and sits
// outside the table above.
double tail_lambda_affine_psi(double alpha0, double theta);

// Additive-form cases: upper 2 - (1+b)^{1/alpha} with b in [0,1]; lower 0
// whenever the generator gap chi - lambda stays bounded (b <= 0).
double tail_lambda_additive_upper(double alpha_exp, double b);
double tail_lambda_additive_lower(double b);

// Kendall tau-a with tie handling; O(n log n). The quadratic reference walks
// every pair and must agree exactly. Both throw on degenerate batches where
// one margin is constant.
double kendall_tau(const SampleBatch& batch);
double kendall_tau_reference(const SampleBatch& batch);

// Spearman rho via midranks.
double spearman_rho(const SampleBatch& batch);

// Total positivity of order 2 on grid rectangles: exhaustive over all
// rectangle pairs when n <= 100, randomized (>= 1e6 pairs, seeded) above.
GridCheckReport tp2_check(const Copula& c, int n = 100, double tol = 1e-12,
                          std::uint64_t seed = 0x5eedULL);

// Pointwise order c <= d on the grid.
GridCheckReport concordance_compare(const Copula& c, const Copula& d, int n = 200,
                                    double tol = 1e-12);

// C(f(s), t) <= f(C(s,t)) on {s <= t}: decides concordance between two
// transforms sharing psi, with f the inverse-composition of their phis.
GridCheckReport transform_order_criterion(const Copula& base, const MonotoneMap& f, int n = 200,
                                          double tol = 1e-12);

} // namespace tfcop

#endif
