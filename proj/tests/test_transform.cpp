#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tfcop/families.hpp"
#include "tfcop/transform.hpp"

using namespace tfcop;

namespace {

TransformedCopula tf_build(Family f, double param, MonotoneMap phi, MonotoneMap psi,
                           GateMode mode = GateMode::Conditions) {
    return TransformedCopula::build(make_family(f, param), {std::move(phi), std::move(psi)}, mode);
}

} // namespace

TEST_CASE("product base with (t, sqrt t) reproduces the diagonal-atom family") {
    const auto tf = tf_build(Family::Independence, 0.0, MonotoneMap::identity(),
                             MonotoneMap::power(0.5));
    auto ca = make_family(Family::CuadrasAuge, 0.5);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j) {
            const double u = i / 200.0, v = j / 200.0;
            worst = std::max(worst, std::fabs(tf(u, v) - (*ca)(u, v)));
        }
    CHECK(worst <= 1e-12);
    CHECK(tf(0.25, 0.81) == doctest::Approx(0.225).epsilon(1e-14));
}

TEST_CASE("identity maps reproduce the base exactly") {
    const auto tf = tf_build(Family::Fgm, 1.0, MonotoneMap::identity(), MonotoneMap::identity());
    auto base = make_family(Family::Fgm, 1.0);
    for (double u : {0.0, 0.12, 0.5, 0.83, 1.0})
        for (double v : {0.07, 0.5, 0.99}) CHECK(tf(u, v) == (*base)(u, v));
}

TEST_CASE("gate rejects psi below phi in both modes") {
    const GeneratorPair bad{MonotoneMap::identity(), MonotoneMap::power(2.0)};
    auto pi = make_family(Family::Independence);
    CHECK_THROWS_AS(TransformedCopula::build(pi, bad, GateMode::Conditions), GateFailure);
    CHECK_THROWS_AS(TransformedCopula::build(pi, bad, GateMode::Numeric), GateFailure);

    try {
        TransformedCopula::build(pi, bad, GateMode::Conditions);
    } catch (const GateFailure& e) {
        REQUIRE(e.certificate().order.has_value());
        CHECK_FALSE(e.certificate().order->passed);
    }
    try {
        TransformedCopula::build(pi, bad, GateMode::Numeric);
    } catch (const GateFailure& e) {
        REQUIRE(e.certificate().two_increasing.has_value());
        CHECK(e.certificate().two_increasing->worst_violation < -1e-10);
    }
}

TEST_CASE("numeric gate accepts a convex phi that the structural gate refuses") {
    const GeneratorPair p{MonotoneMap::power(2.0), MonotoneMap::power(2.0)};
    auto pi = make_family(Family::Independence);
    CHECK_THROWS_AS(TransformedCopula::build(pi, p, GateMode::Conditions), GateFailure);
    // (min^2 max^2)^{1/2} = min*max is the product copula again
    const auto tf = TransformedCopula::build(pi, p, GateMode::Numeric);
    for (double u : {0.2, 0.5, 0.9})
        for (double v : {0.3, 0.8}) CHECK(tf(u, v) == doctest::Approx(u * v).epsilon(1e-12));
    CHECK(tf.certificate().method == GateMethod::NumericGrid);
}

TEST_CASE("certificate records the route that certified the pair") {
    const auto d1 = tf_build(Family::Clayton, 2.0, MonotoneMap::power(0.8), MonotoneMap::power(0.5));
    CHECK(d1.certificate().method == GateMethod::OrderingSampled);
    CHECK(d1.certificate().order.has_value());
    CHECK(d1.certificate().order->passed);
}

TEST_CASE("boundary margins stay uniform") {
    const auto tf = tf_build(Family::Gumbel, 3.0, MonotoneMap::power(0.8), MonotoneMap::power(0.5));
    for (double u : {0.0, 0.21, 0.5, 0.77, 1.0}) {
        CHECK(tf(u, 1.0) == doctest::Approx(u).epsilon(1e-10));
        CHECK(tf(1.0, u) == doctest::Approx(u).epsilon(1e-10));
        CHECK(tf(u, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("transform evaluation agrees with the power closed form") {
    // (u^v)(u_v)^{gamma/beta} (1 + theta (1-(u^v)^beta)(1-(u_v)^gamma))^{1/beta}
    const auto tf = tf_build(Family::Fgm, 1.0, MonotoneMap::identity(), MonotoneMap::power(0.5));
    CHECK(tf(0.25, 0.25) == doctest::Approx(0.171875).epsilon(1e-14));
    auto closed = [](double u, double v, double theta) {
        const double lo = std::min(u, v), hi = std::max(u, v);
        return lo * std::sqrt(hi) * (1.0 + theta * (1.0 - lo) * (1.0 - std::sqrt(hi)));
    };
    for (double u : {0.1, 0.4, 0.65, 0.9})
        for (double v : {0.2, 0.55, 0.8})
            CHECK(tf(u, v) == doctest::Approx(closed(u, v, 1.0)).epsilon(1e-13));
}

TEST_CASE("conditional cdf branches") {
    const auto tf = tf_build(Family::Independence, 0.0, MonotoneMap::identity(),
                             MonotoneMap::power(0.5));
    // below the diagonal: F(v|u) = psi(v)
    CHECK(tf.conditional_cdf(0.25, 0.81) == doctest::Approx(0.9).epsilon(1e-13));
    // above the diagonal: F(v|u) = v psi'(u)
    CHECK(tf.conditional_cdf(0.81, 0.25) == doctest::Approx(0.25 / 1.8).epsilon(1e-13));
    CHECK(tf.conditional_cdf(0.5, 0.0) == 0.0);
    CHECK(tf.conditional_cdf(0.5, 1.0) == 1.0);
}

TEST_CASE("identity transform conditional matches the base partial") {
    const auto tf = tf_build(Family::Fgm, 1.0, MonotoneMap::identity(), MonotoneMap::identity());
    auto base = make_family(Family::Fgm, 1.0);
    for (double u : {0.15, 0.5, 0.85})
        for (double v : {0.1, 0.45, 0.92})
            CHECK(tf.conditional_cdf(u, v) == doctest::Approx(base->du(u, v)).epsilon(1e-8));
}

TEST_CASE("conditional cdf is monotone in v and bounded") {
    const auto tf = tf_build(Family::Clayton, 2.0, MonotoneMap::power(0.8), MonotoneMap::power(0.5));
    for (double u : {0.1, 0.5, 0.9}) {
        double prev = 0.0;
        for (int j = 0; j <= 200; ++j) {
            const double v = j / 200.0;
            const double f = tf.conditional_cdf(u, v);
            CHECK(f >= prev - 1e-12);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
            prev = f;
        }
    }
}

TEST_CASE("diagonal jump values") {
    const auto ca = tf_build(Family::Independence, 0.0, MonotoneMap::identity(),
                             MonotoneMap::power(0.5));
    CHECK(ca.diagonal_jump(0.25) == doctest::Approx(0.25).epsilon(1e-13));
    // gap between the one-sided conditional limits is the jump
    CHECK(ca.conditional_upper(0.25) - ca.conditional_lower(0.25) ==
          doctest::Approx(0.25).epsilon(1e-12));

    // Q(u) = sqrt(u)/2 + theta (sqrt(u)/2 - 3/2 u^{3/2} + u^2)
    for (double theta : {0.0, 1.0}) {
        const auto tf = tf_build(Family::Fgm, theta, MonotoneMap::identity(),
                                 MonotoneMap::power(0.5));
        auto q = [theta](double u) {
            return std::sqrt(u) / 2.0 +
                   theta * (std::sqrt(u) / 2.0 - 1.5 * std::pow(u, 1.5) + u * u);
        };
        for (double u : {0.04, 0.25, 0.5, 0.81, 1.0})
            CHECK(tf.diagonal_jump(u) == doctest::Approx(q(u)).epsilon(1e-10));
    }
}

TEST_CASE("jump agrees with the epsilon-window estimate of the conditional") {
    const auto tf = tf_build(Family::Fgm, 0.5, MonotoneMap::identity(), MonotoneMap::power(0.5));
    const double u = 0.3, eps = 1e-7;
    const double window = tf.conditional_cdf(u, u + eps) - tf.conditional_cdf(u, u - eps);
    CHECK(tf.diagonal_jump(u) == doctest::Approx(window).epsilon(1e-5));
}

TEST_CASE("equal maps leave no diagonal jump") {
    const auto tf = tf_build(Family::Fgm, 1.0, MonotoneMap::power(0.5), MonotoneMap::power(0.5));
    for (double u : {0.1, 0.4, 0.7, 0.95}) CHECK(std::fabs(tf.diagonal_jump(u)) <= 1e-12);
}

TEST_CASE("singular mass quadrature and closed forms") {
    const auto fgm = tf_build(Family::Fgm, 1.0, MonotoneMap::identity(), MonotoneMap::power(0.5));
    const auto d1 = singular_mass(fgm);
    CHECK(d1.singular_mass == doctest::Approx(0.4).epsilon(1e-9));
    REQUIRE(d1.closed_form.has_value());
    CHECK(*d1.closed_form == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(d1.method == MassMethod::ClosedForm);
    CHECK(d1.ac_mass == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(d1.jump_profile.size() == 201);

    const auto ca = tf_build(Family::CuadrasAuge, 0.5, MonotoneMap::power(0.5),
                             MonotoneMap::ca_shape(0.5, 0.5));
    const auto d2 = singular_mass(ca);
    CHECK(d2.singular_mass == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    REQUIRE(d2.closed_form.has_value());
    CHECK(*d2.closed_form == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

    const auto flat = tf_build(Family::Fgm, 0.7, MonotoneMap::identity(), MonotoneMap::identity());
    const auto d3 = singular_mass(flat);
    CHECK(std::fabs(d3.singular_mass) <= 1e-12);
    REQUIRE(d3.closed_form.has_value());
    CHECK(*d3.closed_form == 0.0);

    const auto m = tf_build(Family::FrechetUpper, 0.0, MonotoneMap::power(0.8),
                            MonotoneMap::power(0.5));
    const auto d4 = singular_mass(m);
    CHECK(d4.singular_mass == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(*d4.closed_form == 1.0);

    const auto pi = tf_build(Family::Independence, 0.0, MonotoneMap::power(0.8),
                             MonotoneMap::power(0.5));
    REQUIRE(singular_mass(pi).closed_form.has_value());
    // power pair over the product base lands in the diagonal-atom family
    CHECK(*singular_mass(pi).closed_form ==
          doctest::Approx((1.0 - 0.625) / (1.0 + 0.625)).epsilon(1e-13));
}

TEST_CASE("singular mass needs phi(0) = 0") {
    const auto tf = tf_build(Family::Fgm, 0.5, MonotoneMap::affine(0.3), MonotoneMap::affine(0.5));
    CHECK_THROWS_AS(singular_mass(tf), std::domain_error);
}

TEST_CASE("cumulative singular component matches hand-integrated profiles") {
    const auto ca = tf_build(Family::CuadrasAuge, 0.5, MonotoneMap::power(0.5),
                             MonotoneMap::ca_shape(0.5, 0.5));
    for (double w : {0.2, 0.5, 0.9})
        CHECK(singular_cumulative(ca, w) ==
              doctest::Approx(2.0 / 3.0 * std::pow(w, 1.5)).epsilon(1e-6));

    // S(w) = w^{3/2} (5 + theta (5 - 9w + 5 w^{3/2})) / 15
    const double theta = 1.0;
    const auto fgm = tf_build(Family::Fgm, theta, MonotoneMap::identity(), MonotoneMap::power(0.5));
    auto s_closed = [theta](double w) {
        return std::pow(w, 1.5) * (5.0 + theta * (5.0 - 9.0 * w + 5.0 * std::pow(w, 1.5))) / 15.0;
    };
    for (double w : {0.3, 0.6, 1.0})
        CHECK(singular_cumulative(fgm, w) == doctest::Approx(s_closed(w)).epsilon(1e-6));
}

TEST_CASE("absolutely continuous component against the closed form") {
    const double theta = 1.0;
    const auto tf = tf_build(Family::Fgm, theta, MonotoneMap::identity(), MonotoneMap::power(0.5));
    // A(u,v) = C(u,v) - S(min(u,v)) with both pieces known in closed form
    auto a_closed = [theta, &tf](double u, double v) {
        const double w = std::min(u, v);
        const double s =
            std::pow(w, 1.5) * (5.0 + theta * (5.0 - 9.0 * w + 5.0 * std::pow(w, 1.5))) / 15.0;
        return tf(u, v) - s;
    };
    CHECK(ac_component(tf, 0.3, 0.7) == doctest::Approx(0.1907291201366243).epsilon(1e-6));
    for (double u : {0.3, 0.55})
        for (double v : {0.45, 0.8}) {
            CHECK(ac_component(tf, u, v) == doctest::Approx(a_closed(u, v)).epsilon(1e-6));
            // exchangeable: the split integral must preserve the symmetry
            CHECK(ac_component(tf, u, v) == doctest::Approx(ac_component(tf, v, u)).epsilon(1e-8));
        }
    const auto dec = singular_mass(tf);
    CHECK(ac_component(tf, 1.0, 1.0) == doctest::Approx(1.0 - dec.singular_mass).epsilon(1e-6));
}

TEST_CASE("singular support classification") {
    const auto a = tf_build(Family::Clayton, 2.0, MonotoneMap::power(0.8), MonotoneMap::power(0.5));
    const auto ra = singular_support_check(a);
    CHECK(ra.nonempty);
    CHECK(ra.positive_everywhere);
    REQUIRE(ra.generator_criterion.has_value());
    CHECK(ra.generator_criterion->passed);
    CHECK(ra.methods_agree);

    const auto c = tf_build(Family::Clayton, 2.0, MonotoneMap::power(0.5), MonotoneMap::power(0.5));
    const auto rc = singular_support_check(c);
    CHECK_FALSE(rc.nonempty);
    CHECK(rc.methods_agree);

    const auto pi = tf_build(Family::Independence, 0.0, MonotoneMap::identity(),
                             MonotoneMap::power(0.5));
    CHECK(singular_support_check(pi).nonempty);

    const auto fr = tf_build(Family::Frank, 4.0, MonotoneMap::power(2.0 / 3.0),
                             MonotoneMap::power(0.5));
    const auto rf = singular_support_check(fr);
    CHECK(rf.nonempty);
    CHECK(rf.methods_agree);
}

TEST_CASE("generator shortcut equals direct evaluation") {
    const auto cl = tf_build(Family::Clayton, 2.0, MonotoneMap::power(0.8), MonotoneMap::power(0.5));
    for (double u : {0.1, 0.45, 0.8})
        for (double v : {0.25, 0.6, 0.95})
            CHECK(archimedean_shortcut_eval(cl, u, v) == doctest::Approx(cl(u, v)).epsilon(1e-10));

    // non-strict generator: the lower-bound base clips at zero
    const auto w = tf_build(Family::FrechetLower, 0.0, MonotoneMap::power(0.5),
                            MonotoneMap::power(0.5));
    for (double u : {0.1, 0.5, 0.9})
        for (double v : {0.2, 0.6, 0.97})
            CHECK(archimedean_shortcut_eval(w, u, v) == doctest::Approx(w(u, v)).epsilon(1e-12));

    const auto fgm = tf_build(Family::Fgm, 0.5, MonotoneMap::identity(), MonotoneMap::power(0.5));
    CHECK_THROWS_AS(archimedean_shortcut_eval(fgm, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("additive form of the product-base transform") {
    // lambda = -ln t, chi = -0.5 ln t recovers the diagonal-atom family
    const auto tf = additive_product_copula([](double t) { return -std::log(t); },
                                            [](double t) { return -0.5 * std::log(t); });
    auto ca = make_family(Family::CuadrasAuge, 0.5);
    double worst = 0.0;
    for (int i = 1; i < 100; ++i)
        for (int j = 1; j < 100; ++j) {
            const double u = i / 100.0, v = j / 100.0;
            worst = std::max(worst, std::fabs(tf(u, v) - (*ca)(u, v)));
        }
    CHECK(worst <= 1e-12);

    // the two evaluation routes agree
    for (double u : {0.15, 0.5, 0.85})
        for (double v : {0.3, 0.7})
            CHECK(additive_product_eval([](double t) { return -std::log(t); },
                                        [](double t) { return -0.5 * std::log(t); }, u, v) ==
                  doctest::Approx(tf(u, v)).epsilon(1e-12));

    // bounded generators build and pass the copula checks
    const auto lin = additive_product_copula([](double t) { return 1.0 - t; },
                                             [](double t) { return 0.5 * (1.0 - t); });
    CHECK(check_boundary(lin, 100).passed);
    CHECK(check_two_increasing(lin, 100).passed);
}

TEST_CASE("additive form validates its generators") {
    // chi - lambda must not decrease
    CHECK_THROWS_AS(additive_product_copula([](double t) { return 1.0 - t; },
                                            [](double t) { return 2.0 * (1.0 - t); }),
                    std::invalid_argument);
    // chi(1) must be zero
    CHECK_THROWS_AS(additive_product_copula([](double t) { return 1.0 - t; },
                                            [](double t) { return 1.0 - 0.5 * t; }),
                    std::invalid_argument);
}

TEST_CASE("transform metadata") {
    const auto tf = tf_build(Family::Clayton, 2.0, MonotoneMap::power(0.8), MonotoneMap::power(0.5));
    CHECK(tf.exchangeable());
    CHECK(tf.name().find("clayton") != std::string::npos);
    CHECK(tf.pair().phi.kind() == MapKind::Power);
    CHECK(tf.base().name().find("clayton") != std::string::npos);
}
