#ifndef TFCOP_MONOTONE_MAP_HPP
#define TFCOP_MONOTONE_MAP_HPP

#include <functional>
#include <string>
#include <vector>

#include "tfcop/grid_check.hpp"

namespace tfcop {

enum class MapKind {
    Identity,
    Power,
    CaShape,
    Affine,
    ExpLinear,
    Tabulated,
    Composite,
    PointwiseMax,
    Custom,
};

// Increasing map [0,1] -> [0,1] with f(1) = 1, the distortion applied to the
// copula arguments. Closed-form derivative/inverse when available, numeric
// fallbacks otherwise.
class MonotoneMap {
  public:
    double operator()(double t) const;
    double deriv(double t) const;
    // Inverse on [f(0), 1]; throws std::domain_error outside that range.
    double inverse(double y) const;
    // Extends the inverse with 0 on [0, f(0)].
    double pseudo_inverse(double y) const;

    double at0() const { return f0_; }
    bool has_analytic_deriv() const { return static_cast<bool>(df_); }
    MapKind kind() const { return kind_; }
    const std::vector<double>& params() const { return params_; }
    const std::string& label() const { return label_; }

    static MonotoneMap identity();
    // t^beta, beta > 0.
    static MonotoneMap power(double beta);
    // t^beta (2 - t^gamma), 0 < beta <= 1, 0 <= gamma <= beta.
    static MonotoneMap ca_shape(double beta, double gamma);
    // (1-alpha) t + alpha, alpha in [0,1).
    static MonotoneMap affine(double alpha);
    // exp(-c (1-t)), c > 0.
    static MonotoneMap exp_linear(double c);
    // Linear interpolation of values on the uniform grid; needs
    // non-decreasing values with back() == 1.
    static MonotoneMap tabulated(std::vector<double> values, std::string label = "tabulated");
    // Arbitrary callable; derivative optional (finite differences otherwise).
    static MonotoneMap custom(std::function<double(double)> f,
                              std::function<double(double)> df, std::string label);
    static MonotoneMap composed(const MonotoneMap& outer, const MonotoneMap& inner);
    static MonotoneMap pointwise_max(const MonotoneMap& a, const MonotoneMap& b);

  private:
    MonotoneMap() = default;

    MapKind kind_ = MapKind::Custom;
    std::vector<double> params_;
    std::string label_;
    std::function<double(double)> f_;
    std::function<double(double)> df_;  // empty -> finite differences
    std::function<double(double)> inv_; // empty -> bisection
    double f0_ = 0.0;
};

// Sampled monotonicity at n+1 uniform points. `strict` demands strictly
// positive consecutive differences, otherwise differences >= -tol pass.
GridCheckReport check_increasing(const MonotoneMap& m, int n = 1000, bool strict = true,
                                 double tol = 1e-10);

// Sampled concavity via second differences (<= tol passes).
GridCheckReport check_concave(const MonotoneMap& m, int n = 1000, double tol = 1e-10);

// Argument-map admissibility: strictly increasing with m(1)=1 (within 1e-12),
// optionally concave. The weaker variant only needs non-decreasing.
GridCheckReport check_phi_membership(const MonotoneMap& m, int n = 1000,
                                     bool require_concave = false, double tol = 1e-10);
GridCheckReport check_psi_membership(const MonotoneMap& m, int n = 1000, double tol = 1e-10);

} // namespace tfcop

#endif
