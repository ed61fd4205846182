#ifndef TFCOP_TRANSFORM_HPP
#define TFCOP_TRANSFORM_HPP

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfcop/copula.hpp"
#include "tfcop/generator_pair.hpp"

namespace tfcop {

// How a transform candidate gets certified before construction.
//  Conditions: structural route — phi strictly increasing, concave, onto 1;
//              psi non-decreasing onto 1; then either the sampled ordering
//              condition or (supermigrative base + increasing phi/psi ratio).
//  Numeric:    build first, then grid-check uniform margins and rectangle
//              positivity of the candidate itself.
enum class GateMode { Conditions, Numeric };
enum class GateMethod { OrderingSampled, SupermigrativeRatio, NumericGrid };

std::string gate_method_name(GateMethod m);

// Everything the gate verified, kept for reporting.
struct ConditionCertificate {
    GateMethod method = GateMethod::OrderingSampled;
    std::string base;
    GridCheckReport phi_admissible;
    GridCheckReport psi_admissible;
    std::optional<GridCheckReport> order;
    std::optional<GridCheckReport> supermigrative;
    std::optional<GridCheckReport> ratio;
    std::optional<GridCheckReport> boundary;
    std::optional<GridCheckReport> two_increasing;
};

// Raised when a candidate fails its gate; carries whatever was checked.
class GateFailure : public std::runtime_error {
  public:
    GateFailure(const std::string& msg, ConditionCertificate cert)
        : std::runtime_error(msg), cert_(std::move(cert)) {}
    const ConditionCertificate& certificate() const { return cert_; }

  private:
    ConditionCertificate cert_;
};

// C*(u,v) = phi^{[-1]}( C(phi(u^v), psi(u_v)) ) with u^v = min, u_v = max.
// Exchangeable by construction; carries a jump component on the diagonal
// whenever the two argument maps pull the conditional limits apart.
class TransformedCopula final : public Copula {
  public:
    static TransformedCopula build(CopulaPtr base, GeneratorPair pair,
                                   GateMode mode = GateMode::Conditions, int grid_n = 200);

    double du(double u, double v) const override { return conditional_cdf(u, v); }
    double dv(double u, double v) const override { return conditional_cdf(v, u); }
    bool has_analytic_partials() const override;
    std::string name() const override;

    // P(V <= v | U = u); right-continuous in v, so the diagonal atom is
    // included at v == u. Returns 0 on the flat region where the base value
    // sits at or below phi(0).
    double conditional_cdf(double u, double v) const;
    // One-sided limits of the conditional at the diagonal and their gap.
    double conditional_lower(double u) const;
    double conditional_upper(double u) const;
    double diagonal_jump(double u) const;

    const ConditionCertificate& certificate() const { return cert_; }
    const GeneratorPair& pair() const { return pair_; }
    const Copula& base() const { return *base_; }
    CopulaPtr base_ptr() const { return base_; }

  protected:
    double value(double u, double v) const override;

  private:
    TransformedCopula(CopulaPtr base, GeneratorPair pair, ConditionCertificate cert);

    CopulaPtr base_;
    GeneratorPair pair_;
    ConditionCertificate cert_;
};

enum class MassMethod { Quadrature, ClosedForm };

// Split of the copula mass into the diagonal (singular) component and the
// rest. `singular_mass` is always the quadrature value; `closed_form` is
// filled when the base/maps combination has a known analytic mass.
struct SingularDecomposition {
    double singular_mass = 0.0;
    double ac_mass = 0.0;
    std::optional<double> closed_form;
    std::vector<std::array<double, 2>> jump_profile;
    MassMethod method = MassMethod::Quadrature;
};

// Analytic diagonal mass for the recognized combinations, nullopt otherwise.
std::optional<double> closed_form_singular_mass(const TransformedCopula& tf);

// Integrates the diagonal jump. Requires phi(0) = 0 (otherwise the flat
// region carries mass off the diagonal and the split is not this simple);
// throws std::domain_error when that fails.
SingularDecomposition singular_mass(const TransformedCopula& tf, double tol = 1e-9,
                                    int profile_points = 200);

// Mass of diagonal atoms with coordinate <= w.
double singular_cumulative(const TransformedCopula& tf, double w, double tol = 1e-9);

// Absolutely continuous component A(u,v): the copula measure of [0,u]x[0,v]
// with the diagonal atoms removed. A(1,1) + singular mass = 1.
double ac_component(const TransformedCopula& tf, double u, double v, double tol = 1e-9);

// Where the diagonal jump lives. `max_excess` > tol at some sampled point
// means the singular support is nonempty; the generator-gap criterion (for
// bases with an additive generator) is cross-checked when available.
struct SingularSupportReport {
    int n = 0;
    double tol = 0.0;
    double min_excess = 0.0;
    double max_excess = 0.0;
    bool nonempty = false;
    bool positive_everywhere = false;
    std::optional<GridCheckReport> generator_criterion;
    bool methods_agree = true;
};

SingularSupportReport singular_support_check(const TransformedCopula& tf, int n = 200,
                                             double tol = 1e-12);

// Shortcut evaluation for bases with an additive generator:
//   C*(u,v) = phi^{[-1]}( gen^{[-1]}( gen(phi(min)) + gen(psi(max)) ) ).
// Must agree with the direct evaluation; throws std::invalid_argument when
// the base has no generator.
double archimedean_shortcut_eval(const TransformedCopula& tf, double u, double v);

// Product-base transform written additively: lambda strictly decreasing with
// lambda(1)=0, chi non-increasing with chi(1)=0, chi-lambda non-decreasing.
// Builds the copula phi^{[-1]}(phi(min) psi(max)) with phi=exp(-lambda),
// psi=exp(-chi). The structural gate is used when exp(-lambda) is concave,
// otherwise the numeric gate.
TransformedCopula additive_product_copula(const std::function<double(double)>& lambda,
                                          const std::function<double(double)>& chi,
                                          int grid_n = 200);

// Direct additive-form evaluation used to cross-check additive_product_copula.
double additive_product_eval(const std::function<double(double)>& lambda,
                             const std::function<double(double)>& chi, double u, double v);

} // namespace tfcop

#endif
