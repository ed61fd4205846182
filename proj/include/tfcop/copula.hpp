#ifndef TFCOP_COPULA_HPP
#define TFCOP_COPULA_HPP

#include <memory>
#include <string>

#include "tfcop/grid_check.hpp"
#include "tfcop/unit_value.hpp"

namespace tfcop {

struct ArchimedeanGenerator;

// Bivariate copula interface. Evaluation clamps arguments onto [0,1] (with
// the usual roundoff tolerance); partials fall back to central differences
// unless a subclass provides closed forms.
//
// Partial-derivative convention at kinks: du/dv are the limits taken from
// the region {first argument <= second}, which is the side the transform
// machinery always evaluates from.
class Copula {
  public:
    virtual ~Copula() = default;

    double operator()(double u, double v) const { return value(clamp_unit(u), clamp_unit(v)); }

    // dC/du and dC/dv.
    virtual double du(double u, double v) const;
    virtual double dv(double u, double v) const;
    virtual bool has_analytic_partials() const { return false; }

    virtual bool exchangeable() const { return true; }

    // Additive generator when the family admits one, else nullptr.
    virtual const ArchimedeanGenerator* generator() const { return nullptr; }

    virtual std::string name() const = 0;

  protected:
    virtual double value(double u, double v) const = 0;
};

using CopulaPtr = std::shared_ptr<const Copula>;

// Central finite differences on a copula slice, step h, one-sided at the ends.
double fd_du(const Copula& c, double u, double v, double h = 1e-6);
double fd_dv(const Copula& c, double u, double v, double h = 1e-6);

// Uniform-margin boundary identities: C(u,0)=C(0,u)=0, C(u,1)=C(1,u)=u.
GridCheckReport check_boundary(const Copula& c, int n = 200, double tol = 1e-10);

// Pointwise bounds max(u+v-1,0) <= C(u,v) <= min(u,v).
GridCheckReport check_frechet_bounds(const Copula& c, int n = 200, double tol = 1e-10);

// Rectangle inequality on every cell of the n x n grid.
GridCheckReport check_two_increasing(const Copula& c, int n = 200, double tol = 1e-10);

// |C(u,v) - C(v,u)| below tolerance on the grid.
GridCheckReport check_exchangeable(const Copula& c, int n = 50, double tol = 1e-14);

} // namespace tfcop

#endif
