#include "tfcop/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfcop/archimedean.hpp"
#include "tfcop/families.hpp"
#include "tfcop/quadrature.hpp"
#include "tfcop/rootfind.hpp"

namespace tfcop {

namespace {

constexpr double kQuadLo = 1e-9; // jump integrals start just inside (0,1)

std::string describe(const GridCheckReport& r) {
    return r.check + " (worst violation " + std::to_string(r.worst_violation) + " at grid " +
           std::to_string(r.grid_size) + ")";
}

} // namespace

std::string gate_method_name(GateMethod m) {
    switch (m) {
        case GateMethod::OrderingSampled: return "ordering-sampled";
        case GateMethod::SupermigrativeRatio: return "supermigrative-ratio";
        case GateMethod::NumericGrid: return "numeric-grid";
    }
    return "unknown";
}

TransformedCopula::TransformedCopula(CopulaPtr base, GeneratorPair pair, ConditionCertificate cert)
    : base_(std::move(base)), pair_(std::move(pair)), cert_(std::move(cert)) {}

TransformedCopula TransformedCopula::build(CopulaPtr base, GeneratorPair pair, GateMode mode,
                                           int grid_n) {
    if (!base) throw std::invalid_argument("transform: base copula required");
    ConditionCertificate cert;
    cert.base = base->name();

    if (mode == GateMode::Conditions) {
        cert.phi_admissible = check_phi_membership(pair.phi, 1000, /*require_concave=*/true);
        if (!cert.phi_admissible.passed)
            throw GateFailure("transform gate: phi fails " + describe(cert.phi_admissible), cert);
        cert.psi_admissible = check_psi_membership(pair.psi);
        if (!cert.psi_admissible.passed)
            throw GateFailure("transform gate: psi fails " + describe(cert.psi_admissible), cert);

        cert.order = check_order_condition(pair, *base, grid_n);
        if (cert.order->passed) {
            cert.method = GateMethod::OrderingSampled;
            return TransformedCopula(std::move(base), std::move(pair), std::move(cert));
        }
        // Fallback: supermigrative base plus increasing phi/psi ratio.
        try {
            cert.supermigrative = check_supermigrative(*base);
        } catch (const std::invalid_argument&) {
            throw GateFailure("transform gate: ordering condition fails " + describe(*cert.order) +
                                  " and the base is not exchangeable",
                              cert);
        }
        cert.ratio = check_ratio_increasing(pair);
        if (cert.supermigrative->passed && cert.ratio->passed) {
            cert.method = GateMethod::SupermigrativeRatio;
            return TransformedCopula(std::move(base), std::move(pair), std::move(cert));
        }
        const GridCheckReport& blame =
            !cert.supermigrative->passed ? *cert.supermigrative : *cert.ratio;
        throw GateFailure("transform gate: ordering condition fails " + describe(*cert.order) +
                              " and fallback fails " + describe(blame),
                          cert);
    }

    // Numeric gate: admissibility without concavity, then check the
    // candidate itself for copula properties on the grid.
    cert.phi_admissible = check_phi_membership(pair.phi, 1000, /*require_concave=*/false);
    if (!cert.phi_admissible.passed)
        throw GateFailure("transform gate: phi fails " + describe(cert.phi_admissible), cert);
    cert.psi_admissible = check_psi_membership(pair.psi);
    if (!cert.psi_admissible.passed)
        throw GateFailure("transform gate: psi fails " + describe(cert.psi_admissible), cert);

    cert.method = GateMethod::NumericGrid;
    TransformedCopula candidate(std::move(base), std::move(pair), cert);
    cert.boundary = check_boundary(candidate, grid_n);
    cert.two_increasing = check_two_increasing(candidate, grid_n);
    if (!cert.boundary->passed)
        throw GateFailure("transform gate: candidate fails " + describe(*cert.boundary), cert);
    if (!cert.two_increasing->passed)
        throw GateFailure("transform gate: candidate fails " + describe(*cert.two_increasing), cert);
    candidate.cert_ = std::move(cert);
    return candidate;
}

double TransformedCopula::value(double u, double v) const {
    const double s = std::min(u, v), t = std::max(u, v);
    const double w = (*base_)(pair_.phi(s), pair_.psi(t));
    return pair_.phi.pseudo_inverse(w);
}

bool TransformedCopula::has_analytic_partials() const {
    return base_->has_analytic_partials() && pair_.phi.has_analytic_deriv() &&
           pair_.psi.has_analytic_deriv();
}

std::string TransformedCopula::name() const {
    return "transformed[" + base_->name() + "; " + pair_.phi.label() + ", " + pair_.psi.label() +
           "]";
}

double TransformedCopula::conditional_cdf(double u, double v) const {
    u = std::clamp(clamp_unit(u), 1e-12, 1.0 - 1e-12);
    v = clamp_unit(v);
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;

    const double s = std::min(u, v), t = std::max(u, v);
    const double x = pair_.phi(s), y = pair_.psi(t);
    const double w = (*base_)(x, y);
    if (w <= pair_.phi.at0()) return 0.0; // flat region: no conditional mass yet
    const double den = pair_.phi.deriv(pair_.phi.pseudo_inverse(w));
    const double num = v >= u ? base_->du(x, y) * pair_.phi.deriv(u)
                              : base_->dv(x, y) * pair_.psi.deriv(u);
    if (!(den > 0.0)) return 1.0;
    return std::clamp(num / den, 0.0, 1.0);
}

double TransformedCopula::conditional_upper(double u) const { return conditional_cdf(u, u); }

double TransformedCopula::conditional_lower(double u) const {
    u = std::clamp(clamp_unit(u), 1e-12, 1.0 - 1e-12);
    const double x = pair_.phi(u), y = pair_.psi(u);
    const double w = (*base_)(x, y);
    if (w <= pair_.phi.at0()) return 0.0;
    const double den = pair_.phi.deriv(pair_.phi.pseudo_inverse(w));
    if (!(den > 0.0)) return 1.0;
    return std::clamp(base_->dv(x, y) * pair_.psi.deriv(u) / den, 0.0, 1.0);
}

double TransformedCopula::diagonal_jump(double u) const {
    u = std::clamp(clamp_unit(u), 1e-12, 1.0 - 1e-12);
    const double x = pair_.phi(u), y = pair_.psi(u);
    const double w = (*base_)(x, y);
    if (w <= pair_.phi.at0()) return 0.0;
    const double den = pair_.phi.deriv(pair_.phi.pseudo_inverse(w));
    if (!(den > 0.0)) return 0.0;
    const double num =
        base_->du(x, y) * pair_.phi.deriv(u) - base_->dv(x, y) * pair_.psi.deriv(u);
    return std::clamp(num / den, 0.0, 1.0);
}

std::optional<double> closed_form_singular_mass(const TransformedCopula& tf) {
    const auto* fam = dynamic_cast<const FamilyCopula*>(&tf.base());
    if (!fam) return std::nullopt;
    const MonotoneMap& phi = tf.pair().phi;
    const MonotoneMap& psi = tf.pair().psi;
    constexpr double eps = 1e-12;

    const auto power_exponent = [](const MonotoneMap& m) -> std::optional<double> {
        if (m.kind() == MapKind::Identity) return 1.0;
        if (m.kind() == MapKind::Power) return m.params()[0];
        return std::nullopt;
    };
    const auto pb = power_exponent(phi), qb = power_exponent(psi);
    const bool same_power = pb && qb && std::fabs(*pb - *qb) < eps;

    // All mass sits on the diagonal for the upper bound, whatever the maps.
    if (fam->family() == Family::FrechetUpper) return 1.0;

    if (same_power) {
        switch (fam->family()) {
            case Family::CuadrasAuge: {
                const double a = fam->param();
                return (1.0 - a) / (1.0 + a);
            }
            case Family::Independence:
            case Family::Fgm:
            case Family::Clayton:
            case Family::Gumbel:
            case Family::Frank:
            case Family::FrechetLower:
                return 0.0; // equal maps over a diagonal-smooth base: no atoms
            default: break;
        }
    }

    // Product base with power maps collapses to the one-parameter
    // diagonal-atom family with exponent qb/pb.
    if (fam->family() == Family::Independence && pb && qb && *qb <= *pb + eps) {
        const double c = *qb / *pb;
        return (1.0 - c) / (1.0 + c);
    }

    // theta-perturbed product base, identity phi, square-root psi.
    if (fam->family() == Family::Fgm && pb && std::fabs(*pb - 1.0) < eps && qb &&
        std::fabs(*qb - 0.5) < eps)
        return (5.0 + fam->param()) / 15.0;

    // Diagonal-atom base with matching power/ca-shape maps.
    if (fam->family() == Family::CuadrasAuge && pb && psi.kind() == MapKind::CaShape) {
        const double a = fam->param();
        const double beta = psi.params()[0], gamma = psi.params()[1];
        if (std::fabs(*pb - beta) < eps && std::fabs(beta - a) < eps)
            return 4.0 / (1.0 + a) - (1.0 - a - gamma) / (1.0 + a + gamma) - 2.0;
    }

    return std::nullopt;
}

SingularDecomposition singular_mass(const TransformedCopula& tf, double tol, int profile_points) {
    if (tf.pair().phi.at0() > 1e-15)
        throw std::domain_error(
            "singular_mass: requires phi(0)=0; the flat region of this transform carries "
            "off-diagonal mass");
    SingularDecomposition out;
    out.singular_mass = adaptive_simpson([&tf](double s) { return tf.diagonal_jump(s); }, kQuadLo,
                                         1.0, tol);
    out.singular_mass = std::clamp(out.singular_mass, 0.0, 1.0);
    out.ac_mass = 1.0 - out.singular_mass;
    out.closed_form = closed_form_singular_mass(tf);
    out.method = out.closed_form ? MassMethod::ClosedForm : MassMethod::Quadrature;
    out.jump_profile.reserve(static_cast<std::size_t>(profile_points) + 1);
    for (int i = 0; i <= profile_points; ++i) {
        const double u = static_cast<double>(i) / profile_points;
        out.jump_profile.push_back({u, tf.diagonal_jump(u)});
    }
    return out;
}

double singular_cumulative(const TransformedCopula& tf, double w, double tol) {
    w = clamp_unit(w);
    if (w <= kQuadLo) return 0.0;
    return adaptive_simpson([&tf](double s) { return tf.diagonal_jump(s); }, kQuadLo, w, tol);
}

double ac_component(const TransformedCopula& tf, double u, double v, double tol) {
    u = clamp_unit(u);
    v = clamp_unit(v);
    if (u <= 0.0 || v <= 0.0) return 0.0;
    // The conditional F(v|s) integrates over s to the copula; removing the
    // atom when the rectangle reaches the diagonal (s <= v) leaves exactly
    // the absolutely continuous part.
    const double cut = std::min(u, v);
    double a = adaptive_simpson(
        [&tf, v](double s) { return tf.conditional_cdf(s, v) - tf.diagonal_jump(s); }, kQuadLo,
        cut, tol);
    if (u > cut) {
        // F(v|s) drops by the diagonal atom exactly at s = cut; that atom was
        // handled above, so start this piece on the smooth side of the jump.
        const double past_atom = std::nextafter(cut, 1.0);
        a += adaptive_simpson([&tf, v](double s) { return tf.conditional_cdf(s, v); }, past_atom,
                              u, tol);
    }
    return std::clamp(a, 0.0, 1.0);
}

SingularSupportReport singular_support_check(const TransformedCopula& tf, int n, double tol) {
    SingularSupportReport rep;
    rep.n = n;
    rep.tol = tol;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    const Copula& base = tf.base();
    const MonotoneMap& phi = tf.pair().phi;
    const MonotoneMap& psi = tf.pair().psi;
    for (int i = 1; i <= n; ++i) {
        const double u = static_cast<double>(i) / (n + 1);
        const double x = phi(u), y = psi(u);
        const double d = base.du(x, y) * phi.deriv(u) - base.dv(x, y) * psi.deriv(u);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    rep.min_excess = lo;
    rep.max_excess = hi;
    rep.nonempty = hi > tol;
    rep.positive_everywhere = lo > tol;

    if (const ArchimedeanGenerator* gen = base.generator()) {
        // gen(psi) - gen(phi) strictly increasing <=> the diagonal gap stays
        // open; sampled away from 0 where strict generators diverge.
        ViolationTracker t;
        const double eps = 1e-3;
        bool strict = true;
        double prev_t = eps;
        double prev = gen->value(psi(prev_t)) - gen->value(phi(prev_t));
        for (int i = 1; i <= n; ++i) {
            const double x = eps + (1.0 - eps) * static_cast<double>(i) / n;
            const double cur = gen->value(psi(x)) - gen->value(phi(x));
            t.observe(cur - prev, prev_t, x);
            if (!(cur - prev > tol)) strict = false;
            prev = cur;
            prev_t = x;
        }
        auto g = t.report("generator-gap-increasing", n, tol);
        g.passed = strict;
        rep.generator_criterion = g;
        rep.methods_agree = (strict == rep.nonempty);
    }
    return rep;
}

double archimedean_shortcut_eval(const TransformedCopula& tf, double u, double v) {
    const ArchimedeanGenerator* gen = tf.base().generator();
    if (!gen)
        throw std::invalid_argument("archimedean_shortcut_eval: base has no additive generator");
    const double s = std::min(clamp_unit(u), clamp_unit(v));
    const double t = std::max(clamp_unit(u), clamp_unit(v));
    const double x = tf.pair().phi(s), y = tf.pair().psi(t);
    if (gen->strict && (x <= 0.0 || y <= 0.0)) return 0.0;
    const double inner = gen->pseudo_inverse(gen->value(x) + gen->value(y));
    return tf.pair().phi.pseudo_inverse(inner);
}

namespace {

void require_additive_shape(const std::function<double(double)>& lambda,
                            const std::function<double(double)>& chi) {
    const int n = 1000;
    const double eps = 1e-9;
    if (std::fabs(lambda(1.0)) > 1e-12 || std::fabs(chi(1.0)) > 1e-12)
        throw std::invalid_argument("additive_product_copula: lambda(1) and chi(1) must be 0");
    double pl = lambda(eps), pc = chi(eps);
    for (int i = 1; i <= n; ++i) {
        const double t = eps + (1.0 - eps) * static_cast<double>(i) / n;
        const double l = lambda(t), c = chi(t);
        if (!(l < pl))
            throw std::invalid_argument("additive_product_copula: lambda must strictly decrease");
        if (c > pc + 1e-12)
            throw std::invalid_argument("additive_product_copula: chi must not increase");
        if ((c - l) - (pc - pl) < -1e-12)
            throw std::invalid_argument("additive_product_copula: chi - lambda must not decrease");
        pl = l;
        pc = c;
    }
}

} // namespace

double additive_product_eval(const std::function<double(double)>& lambda,
                             const std::function<double(double)>& chi, double u, double v) {
    const double s = std::min(clamp_unit(u), clamp_unit(v));
    const double t = std::max(clamp_unit(u), clamp_unit(v));
    const double w = lambda(s) + chi(t);
    const double top = lambda(0.0);
    if (w >= top) return 0.0;
    if (w <= 0.0) return 1.0;
    return bisect_monotone(lambda, w, 0.0, 1.0, /*increasing=*/false);
}

TransformedCopula additive_product_copula(const std::function<double(double)>& lambda,
                                          const std::function<double(double)>& chi, int grid_n) {
    require_additive_shape(lambda, chi);
    MonotoneMap phi = MonotoneMap::custom([lambda](double t) { return std::exp(-lambda(t)); },
                                          nullptr, "exp(-lambda)");
    MonotoneMap psi =
        MonotoneMap::custom([chi](double t) { return std::exp(-chi(t)); }, nullptr, "exp(-chi)");
    GeneratorPair pair{std::move(phi), std::move(psi)};
    CopulaPtr base = make_family(Family::Independence);
    const GateMode mode =
        check_concave(pair.phi).passed ? GateMode::Conditions : GateMode::Numeric;
    return TransformedCopula::build(std::move(base), std::move(pair), mode, grid_n);
}

} // namespace tfcop
