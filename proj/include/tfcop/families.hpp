#ifndef TFCOP_FAMILIES_HPP
#define TFCOP_FAMILIES_HPP

#include <string>

#include "tfcop/copula.hpp"

namespace tfcop {

enum class Family {
    Independence,
    FrechetUpper,
    FrechetLower,
    Fgm,
    Clayton,
    Gumbel,
    Frank,
    CuadrasAuge,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name); // throws std::invalid_argument

// Base of the built-in families; keeps the family tag and parameter
// recoverable (closed-form lookups downstream match on these).
class FamilyCopula : public Copula {
  public:
    Family family() const { return fam_; }
    double param() const { return param_; }

  protected:
    FamilyCopula(Family f, double p) : fam_(f), param_(p) {}

  private:
    Family fam_;
    double param_;
};

// Construct a base copula; `param` is the family parameter (ignored by the
// parameter-free families). Out-of-domain parameters throw std::domain_error.
//   fgm: theta in [-1,1]; clayton: alpha > 0; gumbel: beta >= 1;
//   frank: gamma > 0; cuadras-auge: alpha in [0,1].
CopulaPtr make_family(Family f, double param = 0.0);

// Supermigrativity: C(a*x, y) >= C(x, a*y) for all a in [0,1], y <= x.
// Sampled on an n-point lattice per axis. Requires exchangeability and
// throws std::invalid_argument when that pre-check fails.
GridCheckReport check_supermigrative(const Copula& c, int n = 40, double tol = 1e-10);

} // namespace tfcop

#endif
