#include "tfcop/suite.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "tfcop/dependence.hpp"
#include "tfcop/families.hpp"
#include "tfcop/sampling.hpp"
#include "tfcop/transform.hpp"

namespace tfcop {

namespace {

std::string fmt(double x, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, x);
    return buf;
}

struct RowSink {
    std::vector<std::string> rows;
    bool all = true;
    void add(bool ok, const std::string& text) {
        rows.push_back(std::string(ok ? "PASS  " : "FAIL  ") + text);
        all = all && ok;
    }
};

TransformedCopula make_tf(CopulaPtr base, MonotoneMap phi, MonotoneMap psi, int grid) {
    return TransformedCopula::build(std::move(base), {std::move(phi), std::move(psi)},
                                    GateMode::Conditions, grid);
}

// ---- shared rank-correlation table ----------------------------------------

struct RankRef {
    char tag;
    double tau, rho;
};
struct RankBase {
    Family fam;
    double param;
    std::array<RankRef, 4> refs;
};

const std::array<RankBase, 3> kRankTable = {{
    {Family::Clayton,
     2.0,
     {{{'a', 0.6226, 0.7712}, {'b', 0.5220, 0.6848}, {'c', 0.3313, 0.4756}, {'d', 0.5023, 0.6839}}}},
    {Family::Gumbel,
     3.0,
     {{{'a', 0.8734, 0.9608}, {'b', 0.8017, 0.9273}, {'c', 0.6677, 0.8499}, {'d', 0.6575, 0.8399}}}},
    {Family::Frank,
     4.0,
     {{{'a', 0.5768, 0.7359}, {'b', 0.4828, 0.6469}, {'c', 0.3297, 0.4787}, {'d', 0.3859, 0.5548}}}},
}};

GeneratorPair pair_for(char tag) {
    switch (tag) {
        case 'a': return {MonotoneMap::power(0.8), MonotoneMap::power(0.5)};
        case 'b': return {MonotoneMap::power(2.0 / 3.0), MonotoneMap::power(0.5)};
        case 'c': return {MonotoneMap::power(0.5), MonotoneMap::power(0.5)};
        default: return {MonotoneMap::identity(), MonotoneMap::identity()};
    }
}

struct RankMeasured {
    double tau = 0.0, rho = 0.0;
};
using RankGrid = std::array<std::array<RankMeasured, 4>, 3>;

RankGrid measure_rank_table(const SuiteOptions& o) {
    RankGrid out;
    for (std::size_t bi = 0; bi < kRankTable.size(); ++bi) {
        const auto& b = kRankTable[bi];
        for (std::size_t pi = 0; pi < b.refs.size(); ++pi) {
            auto tf = make_tf(make_family(b.fam, b.param), pair_for(b.refs[pi].tag).phi,
                              pair_for(b.refs[pi].tag).psi, o.grid);
            const auto batch = sample(tf, o.n_rank, o.seed + 97 * (4 * bi + pi));
            out[bi][pi].tau = kendall_tau(batch);
            out[bi][pi].rho = spearman_rho(batch);
        }
    }
    return out;
}

// ---- criteria --------------------------------------------------------------

CriterionResult c1_fgm_mass(const SuiteOptions& o) {
    CriterionResult r{1, "diagonal mass, perturbed-product base with maps (t, sqrt t)", false, {}, {}};
    RowSink s;
    const double mc_tol = o.quick ? 0.02 : 0.005;
    for (double theta : {0.0, 0.5, 1.0}) {
        auto tf = make_tf(make_family(Family::Fgm, theta), MonotoneMap::identity(),
                          MonotoneMap::power(0.5), o.grid);
        const double expect = (5.0 + theta) / 15.0;
        const auto dec = singular_mass(tf);
        s.add(std::fabs(dec.singular_mass - expect) <= 1e-6,
              "theta=" + fmt(theta, 2) + ": quadrature mass " + fmt(dec.singular_mass, 8) +
                  ", closed form " + fmt(expect, 8) + ", tol 1e-6");
        const auto batch = sample(tf, o.n_mass, o.seed);
        const double frac = batch.diagonal_fraction();
        s.add(std::fabs(frac - expect) <= mc_tol,
              "theta=" + fmt(theta, 2) + ": sampled fraction " + fmt(frac, 5) + " vs " +
                  fmt(expect, 5) + " (n=" + std::to_string(o.n_mass) + ", tol " + fmt(mc_tol, 3) +
                  ")");
    }
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

double ca_closed_mass(double a, double g) {
    if (g == 0.0) return (1.0 - a) / (1.0 + a);
    return 4.0 / (1.0 + a) - (1.0 - a - g) / (1.0 + a + g) - 2.0;
}

CriterionResult c2_ca_mass(const SuiteOptions& o) {
    CriterionResult r{2, "diagonal mass, diagonal-atom base with matched power maps", false, {}, {}};
    RowSink s;
    for (double a : {0.25, 0.5, 0.75}) {
        for (double g : {0.0, a / 2.0, a}) {
            auto tf = make_tf(make_family(Family::CuadrasAuge, a), MonotoneMap::power(a),
                              MonotoneMap::ca_shape(a, g), o.grid);
            const double expect = ca_closed_mass(a, g);
            const auto dec = singular_mass(tf);
            s.add(std::fabs(dec.singular_mass - expect) <= 1e-6,
                  "alpha=" + fmt(a, 2) + " gamma=" + fmt(g, 3) + ": quadrature " +
                      fmt(dec.singular_mass, 8) + ", closed form " + fmt(expect, 8) +
                      ", tol 1e-6");
            const double base_mass = (1.0 - a) / (1.0 + a);
            const double excess = 2.0 * g / ((1.0 + a) * (1.0 + a + g));
            const bool diff_ok = excess >= 0.0 &&
                                 std::fabs((dec.singular_mass - base_mass) - excess) <= 2e-6;
            s.add(diff_ok, "alpha=" + fmt(a, 2) + " gamma=" + fmt(g, 3) +
                               ": mass excess over the untransformed base " +
                               fmt(dec.singular_mass - base_mass, 8) + " vs " + fmt(excess, 8) +
                               " (>= 0)");
        }
    }
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

CriterionResult c3_rank_table(const SuiteOptions& o, const RankGrid& grid) {
    CriterionResult r{3, "rank-correlation table, 12 configurations", false, {}, {}};
    RowSink s;
    const double tol = o.quick ? 0.08 : 0.03;
    for (std::size_t bi = 0; bi < kRankTable.size(); ++bi) {
        const auto& b = kRankTable[bi];
        for (std::size_t pi = 0; pi < b.refs.size(); ++pi) {
            const auto& ref = b.refs[pi];
            const auto& m = grid[bi][pi];
            const bool ok = std::fabs(m.tau - ref.tau) <= tol && std::fabs(m.rho - ref.rho) <= tol;
            s.add(ok, family_name(b.fam) + "(" + fmt(b.param, 0) + ") pair " + ref.tag +
                          ": tau " + fmt(m.tau, 4) + " vs " + fmt(ref.tau, 4) + ", rho " +
                          fmt(m.rho, 4) + " vs " + fmt(ref.rho, 4) + " (tol " + fmt(tol, 2) + ")");
        }
    }
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

CriterionResult c4_rank_ordering(const RankGrid& grid) {
    CriterionResult r{4, "rank ordering: pairs a,b dominate pairs c,d per base", false, {}, {}};
    RowSink s;
    for (std::size_t bi = 0; bi < kRankTable.size(); ++bi) {
        const auto& m = grid[bi];
        const double tau_ab = std::min(m[0].tau, m[1].tau);
        const double tau_cd = std::max(m[2].tau, m[3].tau);
        const double rho_ab = std::min(m[0].rho, m[1].rho);
        const double rho_cd = std::max(m[2].rho, m[3].rho);
        s.add(tau_ab > tau_cd && rho_ab > rho_cd,
              family_name(kRankTable[bi].fam) + ": min(tau_a,tau_b)=" + fmt(tau_ab, 4) +
                  " > max(tau_c,tau_d)=" + fmt(tau_cd, 4) + "; min(rho_a,rho_b)=" +
                  fmt(rho_ab, 4) + " > max(rho_c,rho_d)=" + fmt(rho_cd, 4));
    }
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

CriterionResult c5_tail_closed_forms(const SuiteOptions& o) {
    CriterionResult r{5, "upper/lower tail coefficients against closed forms", false, {}, {}};
    RowSink s;
    const std::array<std::array<double, 2>, 3> bg = {{{1.0, 0.5}, {0.8, 0.4}, {0.5, 0.25}}};
    for (const auto& [beta, gamma] : bg) {
        auto tfa = make_tf(make_family(Family::Fgm, 0.5), MonotoneMap::power(beta),
                           MonotoneMap::ca_shape(beta, gamma), o.grid);
        const auto ua = tail_lambda_numeric(tfa, TailSide::Upper);
        const double ea = gamma / beta;
        s.add(std::fabs(ua.lambda - ea) <= 1e-3,
              "psi=t^b(2-t^g), beta=" + fmt(beta, 2) + " gamma=" + fmt(gamma, 2) + ": lambda_U " +
                  fmt(ua.lambda, 5) + " vs " + fmt(ea, 5));
        auto tfb = make_tf(make_family(Family::Fgm, 0.5), MonotoneMap::power(beta),
                           MonotoneMap::power(gamma), o.grid);
        const auto ub = tail_lambda_numeric(tfb, TailSide::Upper);
        const double eb = 1.0 - gamma / beta;
        s.add(std::fabs(ub.lambda - eb) <= 1e-3,
              "psi=t^g, beta=" + fmt(beta, 2) + " gamma=" + fmt(gamma, 2) + ": lambda_U " +
                  fmt(ub.lambda, 5) + " vs " + fmt(eb, 5));
    }
    const std::array<std::array<double, 2>, 3> at = {{{0.5, 0.0}, {0.5, 1.0}, {0.25, 0.5}}};
    for (const auto& [a0, theta] : at) {
        auto tf = make_tf(make_family(Family::Fgm, theta), MonotoneMap::identity(),
                          MonotoneMap::affine(a0), o.grid);
        const auto lo = tail_lambda_numeric(tf, TailSide::Lower);
        const double expect = tail_lambda_affine_psi(a0, theta);
        s.add(std::fabs(lo.lambda - expect) <= 1e-3,
              "affine psi, alpha0=" + fmt(a0, 2) + " theta=" + fmt(theta, 2) + ": lambda_L " +
                  fmt(lo.lambda, 5) + " vs " + fmt(expect, 5));
    }
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

CriterionResult c6_tail_consistency(const SuiteOptions& o) {
    CriterionResult r{6, "half-power maps over heavy-tailed bases", false, {}, {}};
    RowSink s;
    auto tfg = make_tf(make_family(Family::Gumbel, 3.0), MonotoneMap::power(0.5),
                       MonotoneMap::power(0.5), o.grid);
    const auto up = tail_lambda_numeric(tfg, TailSide::Upper);
    const double cbrt2 = std::cbrt(2.0);
    const double stated = 2.0 - cbrt2 * cbrt2;
    const double base_coeff = 2.0 - cbrt2;
    s.add(std::fabs(up.lambda - stated) <= 1e-3,
          "gumbel(3), phi=psi=t^0.5: lambda_U " + fmt(up.lambda, 6) + " vs stated target " +
              fmt(stated, 6) + " (tol 1e-3)");
    r.note = "upper-tail row: measured " + fmt(up.lambda, 6) + " equals the base coefficient " +
             fmt(base_coeff, 6) +
             " — equal power maps leave this extreme-value base unchanged (C(u^c,v^c) = "
             "C(u,v)^c), and the local order of 1-phi at 1 is alpha=1, so no change is possible; "
             "the stated target would need alpha=1/2. Reported as measured, not adjusted.";
    auto tfc = make_tf(make_family(Family::Clayton, 2.0), MonotoneMap::power(0.5),
                       MonotoneMap::power(0.5), o.grid);
    const auto lo = tail_lambda_numeric(tfc, TailSide::Lower);
    s.add(std::fabs(lo.lambda - 0.5) <= 1e-3, "clayton(2), phi=psi=t^0.5: lambda_L " +
                                                  fmt(lo.lambda, 6) + " vs 0.5 (tol 1e-3)");
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

struct NamedConfig {
    std::string label;
    Family fam;
    double param;
    MonotoneMap phi, psi;
};

std::vector<NamedConfig> certified_configs() {
    std::vector<NamedConfig> v;
    for (double theta : {0.0, 0.5, 1.0})
        v.push_back({"fgm(" + fmt(theta, 1) + ") (t, sqrt t)", Family::Fgm, theta,
                     MonotoneMap::identity(), MonotoneMap::power(0.5)});
    for (double a : {0.25, 0.5, 0.75})
        for (double g : {0.0, a / 2.0, a})
            v.push_back({"cuadras-auge(" + fmt(a, 2) + ") ca-shape gamma=" + fmt(g, 3),
                         Family::CuadrasAuge, a, MonotoneMap::power(a), MonotoneMap::ca_shape(a, g)});
    for (const auto& b : kRankTable)
        for (const auto& ref : b.refs) {
            auto p = pair_for(ref.tag);
            v.push_back({family_name(b.fam) + "(" + fmt(b.param, 0) + ") pair " + ref.tag, b.fam,
                         b.param, p.phi, p.psi});
        }
    const std::array<std::array<double, 2>, 3> bg = {{{1.0, 0.5}, {0.8, 0.4}, {0.5, 0.25}}};
    for (const auto& [beta, gamma] : bg) {
        v.push_back({"fgm(0.5) (t^" + fmt(beta, 2) + ", ca-shape " + fmt(gamma, 2) + ")",
                     Family::Fgm, 0.5, MonotoneMap::power(beta), MonotoneMap::ca_shape(beta, gamma)});
        v.push_back({"fgm(0.5) (t^" + fmt(beta, 2) + ", t^" + fmt(gamma, 2) + ")", Family::Fgm,
                     0.5, MonotoneMap::power(beta), MonotoneMap::power(gamma)});
    }
    const std::array<std::array<double, 2>, 3> at = {{{0.5, 0.0}, {0.5, 1.0}, {0.25, 0.5}}};
    for (const auto& [a0, theta] : at)
        v.push_back({"fgm(" + fmt(theta, 1) + ") (t, affine " + fmt(a0, 2) + ")", Family::Fgm,
                     theta, MonotoneMap::identity(), MonotoneMap::affine(a0)});
    return v;
}

CriterionResult c7_validity_gates(const SuiteOptions& o) {
    CriterionResult r{7, "copula property grids for every certified configuration", false, {}, {}};
    RowSink s;
    for (const auto& cfg : certified_configs()) {
        auto tf = make_tf(make_family(cfg.fam, cfg.param), cfg.phi, cfg.psi, o.grid);
        const auto b = check_boundary(tf, o.grid);
        const auto f = check_frechet_bounds(tf, o.grid);
        const auto t = check_two_increasing(tf, o.grid);
        const double worst = std::min({b.worst_violation, f.worst_violation, t.worst_violation});
        s.add(b.passed && f.passed && t.passed,
              cfg.label + ": boundary/bounds/2-increasing worst violation " + fmt(worst, 14));
    }
    bool rejected_cond = false, rejected_num = false;
    double cell = 0.0;
    auto bad_pair = [] { return GeneratorPair{MonotoneMap::identity(), MonotoneMap::power(2.0)}; };
    try {
        TransformedCopula::build(make_family(Family::Independence), bad_pair(),
                                 GateMode::Conditions, o.grid);
    } catch (const GateFailure&) {
        rejected_cond = true;
    }
    try {
        TransformedCopula::build(make_family(Family::Independence), bad_pair(), GateMode::Numeric,
                                 o.grid);
    } catch (const GateFailure& e) {
        rejected_num = true;
        if (e.certificate().two_increasing) cell = e.certificate().two_increasing->worst_violation;
    }
    s.add(rejected_cond && rejected_num && cell < -1e-10,
          "invalid pair (t, t^2) over the product base: rejected by both gates; worst cell "
          "volume " +
              fmt(cell, 8));
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

CriterionResult c8_tp2(const SuiteOptions& o) {
    CriterionResult r{8, "total positivity of transformed families; lower bound fails", false, {}, {}};
    RowSink s;
    const int n = o.quick ? 60 : 100;
    for (double theta : {0.0, 1.0}) {
        auto tf = make_tf(make_family(Family::Fgm, theta), MonotoneMap::identity(),
                          MonotoneMap::power(0.5), o.grid);
        const auto rep = tp2_check(tf, n);
        s.add(rep.passed, "fgm(" + fmt(theta, 1) + ") (t, sqrt t): tp2 worst " +
                              fmt(rep.worst_violation, 14));
    }
    for (double g : {0.25, 0.5}) {
        auto tf = make_tf(make_family(Family::CuadrasAuge, 0.5), MonotoneMap::power(0.5),
                          MonotoneMap::ca_shape(0.5, g), o.grid);
        const auto rep = tp2_check(tf, n);
        s.add(rep.passed, "cuadras-auge(0.5) gamma=" + fmt(g, 2) + ": tp2 worst " +
                              fmt(rep.worst_violation, 14));
    }
    auto w = make_family(Family::FrechetLower);
    const auto rep = tp2_check(*w, n);
    const auto& L = rep.worst_location;
    s.add(!rep.passed, "lower bound: tp2 violated by rectangle (" + fmt(L[0], 3) + "," + fmt(L[1], 3) +
                           ") x (" + fmt(L[2], 3) + "," + fmt(L[3], 3) + "), slack " +
                           fmt(rep.worst_violation, 6));
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

CriterionResult c9_concordance(const SuiteOptions& o) {
    CriterionResult r{9, "concordance order through the transform", false, {}, {}};
    RowSink s;
    auto lo = make_tf(make_family(Family::Fgm, 0.2), MonotoneMap::power(0.8),
                      MonotoneMap::power(0.5), o.grid);
    auto hi = make_tf(make_family(Family::Fgm, 0.8), MonotoneMap::power(0.8),
                      MonotoneMap::power(0.5), o.grid);
    const auto bases = concordance_compare(*make_family(Family::Fgm, 0.2),
                                           *make_family(Family::Fgm, 0.8), o.grid);
    s.add(bases.passed, "base order theta 0.2 <= 0.8: worst " + fmt(bases.worst_violation, 14));
    const auto tfs = concordance_compare(lo, hi, o.grid);
    s.add(tfs.passed, "transformed order preserved under (t^0.8, t^0.5): worst " +
                          fmt(tfs.worst_violation, 14));
    auto p1 = make_tf(make_family(Family::Fgm, 0.5), MonotoneMap::power(0.8),
                      MonotoneMap::power(0.6), o.grid);
    auto p2 = make_tf(make_family(Family::Fgm, 0.5), MonotoneMap::power(0.8),
                      MonotoneMap::power(0.5), o.grid);
    const auto fwd = concordance_compare(p1, p2, o.grid);
    s.add(fwd.passed, "psi t^0.6 <= t^0.5 pointwise gives copula order: worst " +
                          fmt(fwd.worst_violation, 14));
    const auto rev = concordance_compare(p2, p1, o.grid);
    s.add(!rev.passed && rev.worst_violation < -1e-6,
          "reversed psi order strictly violates: worst " + fmt(rev.worst_violation, 8));
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

CriterionResult c10_identities(const SuiteOptions& o) {
    CriterionResult r{10, "identity maps, generator shortcut, exact rank statistic", false, {}, {}};
    RowSink s;
    for (const auto& [fam, param] :
         std::array<std::pair<Family, double>, 2>{{{Family::Clayton, 2.0}, {Family::Fgm, 0.7}}}) {
        auto base = make_family(fam, param);
        auto tf = make_tf(base, MonotoneMap::identity(), MonotoneMap::identity(), o.grid);
        double sup = 0.0;
        for (double u : uniform_grid(o.grid))
            for (double v : uniform_grid(o.grid)) sup = std::max(sup, std::fabs(tf(u, v) - (*base)(u, v)));
        s.add(sup <= 1e-12, "identity maps reproduce " + base->name() + ": sup diff " + fmt(sup, 16));
    }
    for (const auto& [fam, param] : std::array<std::pair<Family, double>, 3>{
             {{Family::Clayton, 2.0}, {Family::Gumbel, 3.0}, {Family::Frank, 4.0}}}) {
        auto tf = make_tf(make_family(fam, param), MonotoneMap::power(0.8),
                          MonotoneMap::power(0.5), o.grid);
        double sup = 0.0;
        for (double u : uniform_grid(100))
            for (double v : uniform_grid(100))
                sup = std::max(sup, std::fabs(archimedean_shortcut_eval(tf, u, v) - tf(u, v)));
        s.add(sup <= 1e-10,
              "generator shortcut matches direct evaluation for " + family_name(fam) + ": sup diff " +
                  fmt(sup, 14));
    }
    bool all_eq = true;
    std::uint64_t ctr = 0;
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(uniform01(o.seed + 1000, ctr++) * 1998.0);
        SampleBatch b;
        b.u.resize(n);
        b.v.resize(n);
        b.on_diagonal.assign(n, 0);
        const bool quantize = (k % 2 == 1) && n >= 50;
        for (std::size_t i = 0; i < n; ++i) {
            double u = uniform01(o.seed + 2000, ctr++);
            double v = uniform01(o.seed + 2000, ctr++);
            if (quantize) {
                u = std::floor(u * 8.0) / 8.0;
                v = std::floor(v * 8.0) / 8.0;
            }
            b.u[i] = u;
            b.v[i] = v;
        }
        if (kendall_tau(b) != kendall_tau_reference(b)) all_eq = false;
    }
    s.add(all_eq, "merge-counting tau equals the quadratic reference exactly on 50 batches");
    r.rows = std::move(s.rows);
    r.passed = s.all;
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt) {
    SuiteOptions o = opt;
    if (o.quick) {
        o.n_rank = std::min<std::size_t>(o.n_rank, 2000);
        o.n_mass = std::min<std::size_t>(o.n_mass, 20000);
        o.grid = std::min(o.grid, 100);
    }
    const RankGrid grid = measure_rank_table(o);
    std::vector<CriterionResult> out;
    out.push_back(c1_fgm_mass(o));
    out.push_back(c2_ca_mass(o));
    out.push_back(c3_rank_table(o, grid));
    out.push_back(c4_rank_ordering(grid));
    out.push_back(c5_tail_closed_forms(o));
    out.push_back(c6_tail_consistency(o));
    out.push_back(c7_validity_gates(o));
    out.push_back(c8_tp2(o));
    out.push_back(c9_concordance(o));
    out.push_back(c10_identities(o));
    return out;
}

} // namespace tfcop
