#include "tfcop/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tfcop/rootfind.hpp"

namespace tfcop {

namespace {

std::vector<double> default_eps() { return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7}; }

// Aitken over the last two sliding windows; flags disagreement above 1e-3.
std::pair<double, bool> extrapolate(const std::vector<double>& q) {
    const double last = aitken_limit(q);
    if (q.size() < 4) return {last, true};
    std::vector<double> prev(q.begin(), q.end() - 1);
    const double before = aitken_limit(prev);
    return {last, std::fabs(last - before) <= 1e-3};
}

// Least-squares slope of log y against log x over the last three points.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("loglog_slope: need at least two points");
    const std::size_t k = std::min<std::size_t>(3, n);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = n - k; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(k);
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace

TailReport tail_lambda_numeric(const Copula& c, TailSide side, std::vector<double> eps) {
    if (eps.empty()) eps = default_eps();
    TailReport rep;
    rep.side = side;
    rep.eps = eps;
    rep.quotients.reserve(eps.size());
    for (double e : eps) {
        if (side == TailSide::Upper)
            rep.quotients.push_back((1.0 - c(1.0 - e, 1.0 - e)) / e);
        else
            rep.quotients.push_back(c(e, e) / e);
    }
    const auto [limit, ok] = extrapolate(rep.quotients);
    rep.converged = ok;
    if (!ok) rep.note = "successive extrapolations differ by more than 1e-3";
    const double lam = side == TailSide::Upper ? 2.0 - limit : limit;
    rep.lambda = std::clamp(lam, 0.0, 1.0);
    return rep;
}

double tail_lambda_transformed(double base_lambda, const TailCaseInputs& in) {
    if (!(in.alpha_exp > 0.0))
        throw std::invalid_argument("tail_lambda_transformed: alpha must be positive");
    if (!(in.a > 0.0) || !std::isfinite(in.a))
        throw std::invalid_argument("tail_lambda_transformed: a must be finite and positive");
    switch (in.tag) {
        case TailCase::UpperB1:
            return 2.0 - std::pow(2.0 - base_lambda, 1.0 / in.alpha_exp);
        case TailCase::UpperBaseZero:
            if (std::fabs(base_lambda) > 1e-3)
                throw std::invalid_argument(
                    "tail_lambda_transformed: UpperBaseZero needs a tail-independent base");
            if (in.b < -1e-9 || in.b > 1.0 + 1e-9)
                throw std::invalid_argument("tail_lambda_transformed: UpperBaseZero needs b in [0,1]");
            return 2.0 - std::pow(1.0 + std::clamp(in.b, 0.0, 1.0), 1.0 / in.alpha_exp);
        case TailCase::LowerB1:
            return std::pow(base_lambda, 1.0 / in.alpha_exp);
        case TailCase::LowerBaseZero:
            if (std::fabs(base_lambda) > 1e-3)
                throw std::invalid_argument(
                    "tail_lambda_transformed: LowerBaseZero needs a tail-independent base");
            if (!(in.b > 1e-9) || in.b > 1.0 + 1e-9)
                throw std::invalid_argument(
                    "tail_lambda_transformed: LowerBaseZero needs b in (0,1]; the b=0 boundary "
                    "is case-specific (see tail_lambda_affine_psi)");
            return 0.0;
    }
    throw std::invalid_argument("tail_lambda_transformed: bad case tag");
}

TailCaseInputs estimate_tail_inputs(const GeneratorPair& pair, TailSide side,
                                    std::vector<double> eps) {
    if (eps.empty()) eps = default_eps();
    std::vector<double> y(eps.size()), bq(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const double e = eps[i];
        if (side == TailSide::Upper) {
            y[i] = 1.0 - pair.phi(1.0 - e);
            bq[i] = (1.0 - pair.psi(1.0 - e)) / y[i];
        } else {
            y[i] = pair.phi(e);
            bq[i] = y[i] / pair.psi(e);
        }
    }
    TailCaseInputs in;
    in.alpha_exp = loglog_slope(eps, y);
    std::vector<double> aq(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) aq[i] = y[i] / std::pow(eps[i], in.alpha_exp);
    in.a = aitken_limit(aq);
    in.b = aitken_limit(bq);
    if (std::fabs(in.b - 1.0) <= 1e-3)
        in.tag = side == TailSide::Upper ? TailCase::UpperB1 : TailCase::LowerB1;
    else
        in.tag = side == TailSide::Upper ? TailCase::UpperBaseZero : TailCase::LowerBaseZero;
    return in;
}

double tail_lambda_affine_psi(double alpha0, double theta) {
    if (!(alpha0 > 0.0 && alpha0 <= 1.0))
        throw std::invalid_argument("tail_lambda_affine_psi: alpha0 must lie in (0,1]");
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("tail_lambda_affine_psi: theta must lie in [0,1]");
    return alpha0 * (1.0 + (1.0 - alpha0) * theta);
}

double tail_lambda_additive_upper(double alpha_exp, double b) {
    if (!(alpha_exp > 0.0))
        throw std::invalid_argument("tail_lambda_additive_upper: alpha must be positive");
    if (b < -1e-9 || b > 1.0 + 1e-9)
        throw std::invalid_argument("tail_lambda_additive_upper: b must lie in [0,1]");
    return 2.0 - std::pow(1.0 + std::clamp(b, 0.0, 1.0), 1.0 / alpha_exp);
}

double tail_lambda_additive_lower(double b) {
    if (b > 1e-9)
        throw std::invalid_argument("tail_lambda_additive_lower: needs chi - lambda bounded (b <= 0)");
    return 0.0;
}

namespace {

struct RankPair {
    double u, v;
};

void require_not_degenerate(const SampleBatch& batch) {
    if (batch.size() < 2) throw std::invalid_argument("rank statistics: need at least two samples");
    const auto all_equal = [](const std::vector<double>& x) {
        return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end();
    };
    if (all_equal(batch.u) || all_equal(batch.v))
        throw std::invalid_argument("rank statistics: a margin is constant");
}

// Pairs (i<j) with strictly descending values, counted by merge sort.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                               std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[i] <= v[j])
            buf[k++] = v[i++];
        else {
            inv += mid - i;
            buf[k++] = v[j++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
    return inv;
}

std::uint64_t tied_pairs(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    std::uint64_t total = 0, run = 1;
    for (std::size_t i = 1; i <= x.size(); ++i) {
        if (i < x.size() && x[i] == x[i - 1])
            ++run;
        else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    return total;
}

} // namespace

double kendall_tau(const SampleBatch& batch) {
    require_not_degenerate(batch);
    const std::size_t n = batch.size();
    std::vector<RankPair> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = {batch.u[i], batch.v[i]};
    std::sort(pts.begin(), pts.end(), [](const RankPair& a, const RankPair& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });

    const std::uint64_t npairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const std::uint64_t tu = tied_pairs(batch.u);
    const std::uint64_t tv = tied_pairs(batch.v);
    std::uint64_t tuv = 0;
    {
        auto sorted = pts;
        std::uint64_t run = 1;
        for (std::size_t i = 1; i <= sorted.size(); ++i) {
            if (i < sorted.size() && sorted[i].u == sorted[i - 1].u && sorted[i].v == sorted[i - 1].v)
                ++run;
            else {
                tuv += run * (run - 1) / 2;
                run = 1;
            }
        }
    }

    std::vector<double> vs(n), buf(n);
    for (std::size_t i = 0; i < n; ++i) vs[i] = pts[i].v;
    const std::uint64_t inv = count_inversions(vs, buf, 0, n);

    // concordant - discordant; ties in either margin drop out of both counts.
    const std::int64_t cmd = static_cast<std::int64_t>(npairs) - static_cast<std::int64_t>(tu) -
                             static_cast<std::int64_t>(tv) + static_cast<std::int64_t>(tuv) -
                             2 * static_cast<std::int64_t>(inv);
    return static_cast<double>(cmd) / static_cast<double>(npairs);
}

double kendall_tau_reference(const SampleBatch& batch) {
    require_not_degenerate(batch);
    const std::size_t n = batch.size();
    std::int64_t cmd = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double du = batch.u[i] - batch.u[j];
            const double dv = batch.v[i] - batch.v[j];
            const double s = du * dv;
            if (s > 0.0)
                ++cmd;
            else if (s < 0.0)
                --cmd;
        }
    return static_cast<double>(cmd) /
           static_cast<double>(static_cast<std::uint64_t>(n) * (n - 1) / 2);
}

namespace {

std::vector<double> midranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = rank;
        i = j + 1;
    }
    return r;
}

} // namespace

double spearman_rho(const SampleBatch& batch) {
    require_not_degenerate(batch);
    const auto ru = midranks(batch.u), rv = midranks(batch.v);
    const std::size_t n = ru.size();
    double mu = 0, mv = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mu += ru[i];
        mv += rv[i];
    }
    mu /= static_cast<double>(n);
    mv /= static_cast<double>(n);
    double suv = 0, suu = 0, svv = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = ru[i] - mu, b = rv[i] - mv;
        suv += a * b;
        suu += a * a;
        svv += b * b;
    }
    if (suu == 0.0 || svv == 0.0) throw std::invalid_argument("spearman_rho: zero rank variance");
    return suv / std::sqrt(suu * svv);
}

GridCheckReport tp2_check(const Copula& c, int n, double tol, std::uint64_t seed) {
    const auto g = uniform_grid(n);
    const std::size_t m = g.size();
    std::vector<double> vals(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) vals[i * m + j] = c(g[i], g[j]);
    ViolationTracker t;
    const auto slack = [&](std::size_t i1, std::size_t i2, std::size_t j1, std::size_t j2) {
        return vals[i1 * m + j1] * vals[i2 * m + j2] - vals[i1 * m + j2] * vals[i2 * m + j1];
    };
    if (n <= 100) {
        for (std::size_t i1 = 0; i1 < m; ++i1)
            for (std::size_t i2 = i1 + 1; i2 < m; ++i2)
                for (std::size_t j1 = 0; j1 < m; ++j1)
                    for (std::size_t j2 = j1 + 1; j2 < m; ++j2)
                        t.observe(slack(i1, i2, j1, j2), g[i1], g[j1], g[i2], g[j2]);
    } else {
        const std::size_t draws = 1000000;
        std::uint64_t ctr = 0;
        const auto pick = [&](std::uint64_t s) {
            return static_cast<std::size_t>(uniform01(s, ctr++) * static_cast<double>(m)) % m;
        };
        for (std::size_t k = 0; k < draws; ++k) {
            std::size_t i1 = pick(seed), i2 = pick(seed), j1 = pick(seed), j2 = pick(seed);
            if (i1 == i2 || j1 == j2) continue;
            if (i1 > i2) std::swap(i1, i2);
            if (j1 > j2) std::swap(j1, j2);
            t.observe(slack(i1, i2, j1, j2), g[i1], g[j1], g[i2], g[j2]);
        }
    }
    return t.report("tp2", n, tol);
}

GridCheckReport concordance_compare(const Copula& c, const Copula& d, int n, double tol) {
    ViolationTracker t;
    const auto g = uniform_grid(n);
    for (double u : g)
        for (double v : g) t.observe(d(u, v) - c(u, v), u, v);
    return t.report("concordance", n, tol);
}

GridCheckReport transform_order_criterion(const Copula& base, const MonotoneMap& f, int n,
                                          double tol) {
    ViolationTracker t;
    const auto g = uniform_grid(n);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j) {
            const double s = g[i], x = g[j];
            t.observe(f(base(s, x)) - base(f(s), x), s, x);
        }
    return t.report("transform-order-criterion", n, tol);
}

} // namespace tfcop
