#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tfcop/dependence.hpp"
#include "tfcop/families.hpp"
#include "tfcop/transform.hpp"

using namespace tfcop;

TEST_CASE("numeric tail coefficients of the base families") {
    const auto m = make_family(Family::FrechetUpper);
    const auto up_m = tail_lambda_numeric(*m, TailSide::Upper);
    CHECK(up_m.lambda == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(up_m.converged);

    const auto fgm = make_family(Family::Fgm, 1.0);
    CHECK(tail_lambda_numeric(*fgm, TailSide::Upper).lambda ==
          doctest::Approx(0.0).epsilon(1e-3));
    CHECK(tail_lambda_numeric(*fgm, TailSide::Lower).lambda == doctest::Approx(0.0).epsilon(1e-3));

    const auto cl = make_family(Family::Clayton, 2.0);
    const auto lo_cl = tail_lambda_numeric(*cl, TailSide::Lower);
    CHECK(lo_cl.lambda == doctest::Approx(0.7071067811865476).epsilon(1e-6));
    CHECK(lo_cl.converged);
    CHECK(lo_cl.quotients.size() == lo_cl.eps.size());

    const auto gu = make_family(Family::Gumbel, 3.0);
    CHECK(tail_lambda_numeric(*gu, TailSide::Upper).lambda ==
          doctest::Approx(0.7400789501051268).epsilon(1e-6));
}

TEST_CASE("closed-form tail cases") {
    // matched corner: lambda = 2 - (2 - lambda_base)^{1/alpha}
    const double lam_g3 = 2.0 - std::pow(2.0, 1.0 / 3.0);
    CHECK(tail_lambda_transformed(lam_g3, {TailCase::UpperB1, 0.5, 1.0, 1.0}) ==
          doctest::Approx(2.0 - std::pow(2.0, 2.0 / 3.0)).epsilon(1e-14));
    CHECK(tail_lambda_transformed(0.3, {TailCase::UpperB1, 1.0, 1.0, 1.0}) ==
          doctest::Approx(0.3).epsilon(1e-14));

    // tail-free base: lambda = 2 - (1 + b)^{1/alpha}
    CHECK(tail_lambda_transformed(0.0, {TailCase::UpperBaseZero, 1.0, 0.8, 0.25}) ==
          doctest::Approx(0.75).epsilon(1e-14));

    // matched corner at zero: lambda = lambda_base^{1/alpha}
    CHECK(tail_lambda_transformed(0.7071067811865476, {TailCase::LowerB1, 0.5, 1.0, 1.0}) ==
          doctest::Approx(0.5).epsilon(1e-12));

    // tail-free base at zero dies whenever psi dominates with b in (0,1]
    CHECK(tail_lambda_transformed(0.0, {TailCase::LowerBaseZero, 2.0, 1.0, 0.5}) == 0.0);
}

TEST_CASE("closed-form tail cases reject mismatched inputs") {
    CHECK_THROWS_AS(tail_lambda_transformed(0.5, {TailCase::UpperBaseZero, 1.0, 1.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tail_lambda_transformed(0.0, {TailCase::UpperBaseZero, 1.0, 1.0, 1.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tail_lambda_transformed(0.0, {TailCase::LowerBaseZero, 1.0, 1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tail_lambda_transformed(0.5, {TailCase::LowerBaseZero, 1.0, 1.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tail_lambda_transformed(0.3, {TailCase::UpperB1, 0.0, 1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tail_lambda_transformed(0.3, {TailCase::UpperB1, 1.0, 0.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("tail inputs recovered from the maps") {
    const GeneratorPair equal{MonotoneMap::power(0.7), MonotoneMap::power(0.7)};
    const auto lo = estimate_tail_inputs(equal, TailSide::Lower);
    CHECK(lo.tag == TailCase::LowerB1);
    CHECK(lo.alpha_exp == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(lo.a == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(lo.b == doctest::Approx(1.0).epsilon(1e-6));

    const GeneratorPair sqrt_pair{MonotoneMap::power(0.5), MonotoneMap::power(0.5)};
    const auto up = estimate_tail_inputs(sqrt_pair, TailSide::Upper);
    CHECK(up.tag == TailCase::UpperB1);
    // near 1 every smooth map has local order one; the matched corner keeps
    // the base coefficient: 2 - (2 - l) = l
    CHECK(up.alpha_exp == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(tail_lambda_transformed(0.25, up) == doctest::Approx(0.25).epsilon(1e-6));

    // psi flatter than phi at 1: b = gamma/beta, lambda = 1 - gamma/beta
    const GeneratorPair powers{MonotoneMap::power(0.8), MonotoneMap::power(0.4)};
    const auto upp = estimate_tail_inputs(powers, TailSide::Upper);
    CHECK(upp.tag == TailCase::UpperBaseZero);
    CHECK(upp.b == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(tail_lambda_transformed(0.0, upp) == doctest::Approx(0.5).epsilon(1e-6));

    // ca shape leaves 1 - psi ~ (beta - gamma)(1 - t): b = 1 - gamma/beta
    const GeneratorPair ca{MonotoneMap::power(0.8), MonotoneMap::ca_shape(0.8, 0.4)};
    const auto upc = estimate_tail_inputs(ca, TailSide::Upper);
    CHECK(upc.b == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(tail_lambda_transformed(0.0, upc) == doctest::Approx(0.5).epsilon(1e-5));

    // affine psi keeps mass at zero that the generic cases cannot see
    const GeneratorPair aff{MonotoneMap::identity(), MonotoneMap::affine(0.5)};
    const auto loa = estimate_tail_inputs(aff, TailSide::Lower);
    CHECK(loa.tag == TailCase::LowerBaseZero);
    CHECK(loa.b == doctest::Approx(0.0).epsilon(1e-6));
    CHECK_THROWS_AS(tail_lambda_transformed(0.0, loa), std::invalid_argument);
}

TEST_CASE("affine-psi lower coefficient") {
    CHECK(tail_lambda_affine_psi(0.5, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(tail_lambda_affine_psi(0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(tail_lambda_affine_psi(1.0, 0.7) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(tail_lambda_affine_psi(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(tail_lambda_affine_psi(1.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(tail_lambda_affine_psi(0.5, -0.1), std::invalid_argument);
}

TEST_CASE("additive-form tail coefficients") {
    CHECK(tail_lambda_additive_upper(1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(tail_lambda_additive_upper(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(tail_lambda_additive_upper(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(tail_lambda_additive_upper(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(tail_lambda_additive_upper(1.0, 1.5), std::invalid_argument);
    CHECK(tail_lambda_additive_lower(0.0) == 0.0);
    CHECK(tail_lambda_additive_lower(-2.0) == 0.0);
    CHECK_THROWS_AS(tail_lambda_additive_lower(0.2), std::invalid_argument);
}

namespace {

SampleBatch batch_of(std::vector<double> u, std::vector<double> v) {
    SampleBatch b;
    b.u = std::move(u);
    b.v = std::move(v);
    b.on_diagonal.assign(b.u.size(), 0);
    return b;
}

} // namespace

TEST_CASE("rank statistics on hand-checked batches") {
    const auto mono = batch_of({0.1, 0.3, 0.5, 0.7}, {0.2, 0.4, 0.6, 0.8});
    CHECK(kendall_tau(mono) == 1.0);
    CHECK(spearman_rho(mono) == doctest::Approx(1.0).epsilon(1e-14));

    const auto anti = batch_of({0.1, 0.3, 0.5, 0.7}, {0.8, 0.6, 0.4, 0.2});
    CHECK(kendall_tau(anti) == -1.0);
    CHECK(spearman_rho(anti) == doctest::Approx(-1.0).epsilon(1e-14));

    // one discordant pair, one tie in each margin:
    // pairs (1,2) discordant; (3,4) tied in u; rest concordant
    const auto tied = batch_of({0.1, 0.2, 0.3, 0.3}, {0.2, 0.1, 0.3, 0.4});
    CHECK(kendall_tau(tied) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kendall_tau_reference(tied) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(spearman_rho(tied) == doctest::Approx(0.7378647873726218).epsilon(1e-13));
}

TEST_CASE("rank statistics reject degenerate batches") {
    CHECK_THROWS_AS(kendall_tau(batch_of({0.5}, {0.5})), std::invalid_argument);
    CHECK_THROWS_AS(kendall_tau(batch_of({0.5, 0.5, 0.5}, {0.1, 0.2, 0.3})),
                    std::invalid_argument);
    CHECK_THROWS_AS(spearman_rho(batch_of({0.1, 0.2, 0.3}, {0.4, 0.4, 0.4})),
                    std::invalid_argument);
}

TEST_CASE("merge-counted tau equals the quadratic reference under heavy ties") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        SampleBatch b;
        const std::size_t n = 400;
        for (std::size_t i = 0; i < n; ++i) {
            // quantized draws force long tie runs in both margins
            b.u.push_back(std::floor(uniform01(seed, 2 * i) * 8.0) / 8.0);
            b.v.push_back(std::floor(uniform01(seed, 2 * i + 1) * 8.0) / 8.0);
        }
        b.on_diagonal.assign(n, 0);
        CHECK(kendall_tau(b) == kendall_tau_reference(b));
    }
}

TEST_CASE("total positivity on the grid") {
    CHECK(tp2_check(*make_family(Family::Independence), 60).passed);
    CHECK(tp2_check(*make_family(Family::FrechetUpper), 60).passed);
    CHECK(tp2_check(*make_family(Family::Fgm, 1.0), 60).passed);

    const auto bad = tp2_check(*make_family(Family::FrechetLower), 60);
    CHECK_FALSE(bad.passed);
    CHECK(bad.worst_violation < -0.1);
    // the witness rectangle must reproduce the reported slack
    const auto w = make_family(Family::FrechetLower);
    const auto& L = bad.worst_location;
    const double slack = (*w)(L[0], L[1]) * (*w)(L[2], L[3]) - (*w)(L[0], L[3]) * (*w)(L[2], L[1]);
    CHECK(slack == doctest::Approx(bad.worst_violation).epsilon(1e-12));

    // randomized pair sampling above the exhaustive cutoff
    CHECK(tp2_check(*make_family(Family::Independence), 150).passed);
    CHECK_FALSE(tp2_check(*make_family(Family::FrechetLower), 150).passed);
}

TEST_CASE("concordance ordering within a parametric family survives the transform") {
    const auto weak = make_family(Family::Fgm, 0.2);
    const auto strong = make_family(Family::Fgm, 0.8);
    CHECK(concordance_compare(*weak, *strong).passed);
    CHECK_FALSE(concordance_compare(*strong, *weak).passed);

    const GeneratorPair pair_b{MonotoneMap::power(2.0 / 3.0), MonotoneMap::power(0.5)};
    const auto tweak = TransformedCopula::build(weak, pair_b);
    const auto tstrong = TransformedCopula::build(strong, pair_b);
    CHECK(concordance_compare(tweak, tstrong).passed);
}

TEST_CASE("pointwise-ordered psi orders the transforms") {
    const auto pi = make_family(Family::Independence);
    const auto lo = TransformedCopula::build(pi, {MonotoneMap::identity(), MonotoneMap::power(0.6)});
    const auto hi = TransformedCopula::build(pi, {MonotoneMap::identity(), MonotoneMap::power(0.5)});
    CHECK(concordance_compare(lo, hi).passed);
    const auto rev = concordance_compare(hi, lo);
    CHECK_FALSE(rev.passed);
    CHECK(rev.worst_violation < -1e-6);
}

TEST_CASE("phi-side ordering example") {
    const auto pi = make_family(Family::Independence);
    const auto flat = TransformedCopula::build(pi, {MonotoneMap::power(0.5), MonotoneMap::power(0.5)});
    const auto atom = TransformedCopula::build(pi, {MonotoneMap::identity(), MonotoneMap::power(0.5)});
    CHECK(concordance_compare(flat, atom).passed);
}

TEST_CASE("phi comparison criterion on the shared-psi family") {
    const auto cl = make_family(Family::Clayton, 2.0);
    CHECK(transform_order_criterion(*cl, MonotoneMap::power(0.5)).passed);

    const auto fail = transform_order_criterion(*cl, MonotoneMap::power(2.0));
    CHECK_FALSE(fail.passed);
    CHECK(fail.worst_violation < -1e-6);
    // spot value: f(C(s,x)) - C(f(s),x) at s = x = 1/4 with f = t^2
    const double c = (*cl)(0.25, 0.25);
    const double lhs = c * c - (*cl)(0.0625, 0.25);
    CHECK(lhs < -0.02);
}
