#include "tfcop/families.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tfcop/archimedean.hpp"

namespace tfcop {

namespace {

std::string param_label(const char* fam, double p) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s(%.6g)", fam, p);
    return buf;
}

class Independence final : public FamilyCopula {
  public:
    Independence() : FamilyCopula(Family::Independence, 0.0), gen_(independence_generator()) {}
    double du(double u, double v) const override {
        (void)u;
        return clamp_unit(v);
    }
    double dv(double u, double v) const override {
        (void)v;
        return clamp_unit(u);
    }
    bool has_analytic_partials() const override { return true; }
    const ArchimedeanGenerator* generator() const override { return &gen_; }
    std::string name() const override { return "independence"; }

  protected:
    double value(double u, double v) const override { return u * v; }

  private:
    ArchimedeanGenerator gen_;
};

class FrechetUpper final : public FamilyCopula {
  public:
    FrechetUpper() : FamilyCopula(Family::FrechetUpper, 0.0) {}
    double du(double u, double v) const override { return clamp_unit(u) <= clamp_unit(v) ? 1.0 : 0.0; }
    double dv(double u, double v) const override { return clamp_unit(u) <= clamp_unit(v) ? 0.0 : 1.0; }
    bool has_analytic_partials() const override { return true; }
    std::string name() const override { return "frechet-upper"; }

  protected:
    double value(double u, double v) const override { return std::min(u, v); }
};

class FrechetLower final : public FamilyCopula {
  public:
    FrechetLower() : FamilyCopula(Family::FrechetLower, 0.0), gen_(frechet_lower_generator()) {}
    double du(double u, double v) const override {
        return clamp_unit(u) + clamp_unit(v) > 1.0 ? 1.0 : 0.0;
    }
    double dv(double u, double v) const override { return du(u, v); }
    bool has_analytic_partials() const override { return true; }
    const ArchimedeanGenerator* generator() const override { return &gen_; }
    std::string name() const override { return "frechet-lower"; }

  protected:
    double value(double u, double v) const override { return std::max(u + v - 1.0, 0.0); }

  private:
    ArchimedeanGenerator gen_;
};

class Fgm final : public FamilyCopula {
  public:
    explicit Fgm(double theta) : FamilyCopula(Family::Fgm, theta), theta_(theta) {
        if (!(theta >= -1.0 && theta <= 1.0))
            throw std::domain_error("fgm: theta must lie in [-1,1]");
    }
    double du(double u, double v) const override {
        u = clamp_unit(u);
        v = clamp_unit(v);
        return v * (1.0 + theta_ * (1.0 - 2.0 * u) * (1.0 - v));
    }
    double dv(double u, double v) const override { return du(v, u); }
    bool has_analytic_partials() const override { return true; }
    std::string name() const override { return param_label("fgm", theta_); }

  protected:
    double value(double u, double v) const override {
        return u * v * (1.0 + theta_ * (1.0 - u) * (1.0 - v));
    }

  private:
    double theta_;
};

class Clayton final : public FamilyCopula {
  public:
    explicit Clayton(double alpha)
        : FamilyCopula(Family::Clayton, alpha), alpha_(alpha), gen_(clayton_generator(alpha)) {}
    double du(double u, double v) const override {
        u = clamp_unit(u);
        v = clamp_unit(v);
        if (v <= 0.0) return 0.0;
        if (u <= 0.0) return 1.0;
        const double w = (*this)(u, v);
        return std::pow(w / u, alpha_ + 1.0);
    }
    double dv(double u, double v) const override { return du(v, u); }
    bool has_analytic_partials() const override { return true; }
    const ArchimedeanGenerator* generator() const override { return &gen_; }
    std::string name() const override { return param_label("clayton", alpha_); }

  protected:
    double value(double u, double v) const override {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        return std::pow(std::pow(u, -alpha_) + std::pow(v, -alpha_) - 1.0, -1.0 / alpha_);
    }

  private:
    double alpha_;
    ArchimedeanGenerator gen_;
};

class Gumbel final : public FamilyCopula {
  public:
    explicit Gumbel(double beta)
        : FamilyCopula(Family::Gumbel, beta), beta_(beta), gen_(gumbel_generator(beta)) {}
    double du(double u, double v) const override {
        u = clamp_unit(u);
        v = clamp_unit(v);
        if (v <= 0.0) return 0.0;
        if (u <= 0.0) return beta_ == 1.0 ? v : 1.0;
        if (u >= 1.0 && beta_ > 1.0) return v >= 1.0 ? 1.0 : 0.0;
        const double lu = -std::log(u), lv = -std::log(v);
        const double a = std::pow(std::pow(lu, beta_) + std::pow(lv, beta_), 1.0 / beta_);
        return (*this)(u, v) * std::pow(a, 1.0 - beta_) * std::pow(lu, beta_ - 1.0) / u;
    }
    double dv(double u, double v) const override { return du(v, u); }
    bool has_analytic_partials() const override { return true; }
    const ArchimedeanGenerator* generator() const override { return &gen_; }
    std::string name() const override { return param_label("gumbel", beta_); }

  protected:
    double value(double u, double v) const override {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        if (u >= 1.0) return v;
        if (v >= 1.0) return u;
        const double lu = -std::log(u), lv = -std::log(v);
        return std::exp(-std::pow(std::pow(lu, beta_) + std::pow(lv, beta_), 1.0 / beta_));
    }

  private:
    double beta_;
    ArchimedeanGenerator gen_;
};

class Frank final : public FamilyCopula {
  public:
    explicit Frank(double gamma)
        : FamilyCopula(Family::Frank, gamma), gamma_(gamma), den_(std::expm1(-gamma)),
          gen_(frank_generator(gamma)) {}
    double du(double u, double v) const override {
        u = clamp_unit(u);
        v = clamp_unit(v);
        const double gu = std::expm1(-gamma_ * u), gv = std::expm1(-gamma_ * v);
        return std::exp(-gamma_ * u) * gv / (den_ + gu * gv);
    }
    double dv(double u, double v) const override { return du(v, u); }
    bool has_analytic_partials() const override { return true; }
    const ArchimedeanGenerator* generator() const override { return &gen_; }
    std::string name() const override { return param_label("frank", gamma_); }

  protected:
    double value(double u, double v) const override {
        const double gu = std::expm1(-gamma_ * u), gv = std::expm1(-gamma_ * v);
        return -std::log1p(gu * gv / den_) / gamma_;
    }

  private:
    double gamma_;
    double den_;
    ArchimedeanGenerator gen_;
};

class CuadrasAuge final : public FamilyCopula {
  public:
    explicit CuadrasAuge(double alpha) : FamilyCopula(Family::CuadrasAuge, alpha), alpha_(alpha) {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::domain_error("cuadras-auge: alpha must lie in [0,1]");
    }
    double du(double u, double v) const override {
        u = clamp_unit(u);
        v = clamp_unit(v);
        if (u <= v) return std::pow(v, alpha_);
        return alpha_ * std::pow(u, alpha_ - 1.0) * v;
    }
    double dv(double u, double v) const override {
        u = clamp_unit(u);
        v = clamp_unit(v);
        if (u <= v) return alpha_ * u * std::pow(v, alpha_ - 1.0);
        return std::pow(u, alpha_);
    }
    bool has_analytic_partials() const override { return true; }
    std::string name() const override { return param_label("cuadras-auge", alpha_); }

  protected:
    double value(double u, double v) const override {
        return std::min(u, v) * std::pow(std::max(u, v), alpha_);
    }

  private:
    double alpha_;
};

} // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Independence: return "independence";
        case Family::FrechetUpper: return "frechet-upper";
        case Family::FrechetLower: return "frechet-lower";
        case Family::Fgm: return "fgm";
        case Family::Clayton: return "clayton";
        case Family::Gumbel: return "gumbel";
        case Family::Frank: return "frank";
        case Family::CuadrasAuge: return "cuadras-auge";
    }
    throw std::invalid_argument("family_name: bad enum value");
}

Family family_from_name(const std::string& name) {
    if (name == "independence") return Family::Independence;
    if (name == "frechet-upper") return Family::FrechetUpper;
    if (name == "frechet-lower") return Family::FrechetLower;
    if (name == "fgm") return Family::Fgm;
    if (name == "clayton") return Family::Clayton;
    if (name == "gumbel") return Family::Gumbel;
    if (name == "frank") return Family::Frank;
    if (name == "cuadras-auge") return Family::CuadrasAuge;
    throw std::invalid_argument("unknown copula family: " + name);
}

CopulaPtr make_family(Family f, double param) {
    switch (f) {
        case Family::Independence: return std::make_shared<Independence>();
        case Family::FrechetUpper: return std::make_shared<FrechetUpper>();
        case Family::FrechetLower: return std::make_shared<FrechetLower>();
        case Family::Fgm: return std::make_shared<Fgm>(param);
        case Family::Clayton: return std::make_shared<Clayton>(param);
        case Family::Gumbel: return std::make_shared<Gumbel>(param);
        case Family::Frank: return std::make_shared<Frank>(param);
        case Family::CuadrasAuge: return std::make_shared<CuadrasAuge>(param);
    }
    throw std::invalid_argument("make_family: bad enum value");
}

GridCheckReport check_supermigrative(const Copula& c, int n, double tol) {
    const auto ex = check_exchangeable(c);
    if (!ex.passed)
        throw std::invalid_argument("check_supermigrative: copula is not exchangeable (worst " +
                                    std::to_string(ex.worst_violation) + ")");
    ViolationTracker t;
    const auto g = uniform_grid(n);
    for (double x : g)
        for (double y : g) {
            if (y > x) break;
            for (double a : g) t.observe(c(a * x, y) - c(x, a * y), a, x, y);
        }
    return t.report("supermigrative", n, tol);
}

} // namespace tfcop
