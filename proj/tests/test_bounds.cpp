#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "besselint/bounds.hpp"
#include "besselint/integral.hpp"

using namespace besselint;

TEST_CASE("registry shape") {
    const auto& all = list_bounds();
    CHECK(all.size() == 17);

    std::set<std::string> ids;
    for (const auto& b : all) ids.insert(b.id);
    CHECK(ids.size() == all.size());  // unique ids

    std::set<std::string> f_lower;
    for (const auto& b : all)
        if (b.target == Target::F && b.side == Side::Lower) f_lower.insert(b.id);
    CHECK(f_lower == std::set<std::string>{"L-INEQB2", "L-INEQB3", "L-INEQB4",
                                           "L-INEQB4X", "L-INEQB5", "L-INEQB12",
                                           "L-OLD"});

    CHECK(find_bound("U-GAU2").side == Side::Upper);
    CHECK(find_bound("L-INEQB21").target == Target::G);
    CHECK_THROWS_AS(find_bound("NO-SUCH-BOUND"), std::invalid_argument);

    const std::set<std::string> tight{"L-INEQB2",  "L-INEQB3",  "L-INEQB4",
                                      "L-INEQB4X", "L-INEQB5",  "L-INEQB12",
                                      "L-INEQB21", "L-INEQB22", "L-INEQB23",
                                      "U-GAU9",    "U-GAU2"};
    for (const auto& b : all) {
        CAPTURE(b.id);
        CHECK(b.tight_at_infinity == (tight.count(b.id) > 0));
    }
}

TEST_CASE("restricted-range prefactor") {
    CHECK(m_factor(Order(0.0), 0.5, 4.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(m_factor(Order(0.5), 0.5, 4.0) == doctest::Approx(5.5).epsilon(1e-15));
    // near the pole x* = 1/(1-gamma) the second branch dominates
    CHECK(m_factor(Order(0.0), 0.5, 2.001) == doctest::Approx(4002.0).epsilon(1e-3));
    CHECK_THROWS_AS(m_factor(Order(0.0), 0.5, 2.0), std::domain_error);
    CHECK_THROWS_AS(m_factor(Order(0.0), 0.5, 1.5), std::domain_error);
    CHECK(default_x_star(0.5) == doctest::Approx(4.0));
}

TEST_CASE("validity regions") {
    CHECK_FALSE(validity("L-INEQB3", ParamPoint(1.0, 0.5, 1.0)));
    CHECK(validity("L-INEQB3", ParamPoint(1.5, 0.5, 1.0)));
    CHECK(validity("U-INEQB10", ParamPoint(-0.4, 0.9, 1.0)));
    // U-THM21 applies only for x >= x* = 2/(1-gamma)
    CHECK_FALSE(validity("U-THM21", ParamPoint(0.0, 0.5, 1.0)));
    CHECK(validity("U-THM21", ParamPoint(0.0, 0.5, 4.0)));
    CHECK_FALSE(validity("L-INEQB2", ParamPoint(0.5, 0.5, 1.0)));
    CHECK(validity("L-INEQB2", ParamPoint(-0.4, 0.5, 1.0)));
    CHECK_FALSE(validity("L-INEQB5", ParamPoint(0.5, 0.5, 1.0)));
    CHECK_FALSE(validity("L-INEQB12", ParamPoint(0.5, 0.5, 1.0)));
    CHECK(validity("L-INEQB12", ParamPoint(0.75, 0.5, 1.0)));
    // gamma endpoints are outside every validity region
    CHECK_FALSE(validity("L-INEQB4", ParamPoint(1.0, 0.0, 1.0)));
    CHECK_FALSE(validity("U-GAU2", ParamPoint(1.0, 1.0, 1.0)));

    // out-of-region evaluation is rejected with the violated predicate named
    try {
        evaluate_bound("L-INEQB3", ParamPoint(1.0, 0.5, 1.0));
        FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("nu >= 3/2") != std::string::npos);
    }
}

TEST_CASE("all bounds vanish at x = 0") {
    for (const auto& b : list_bounds()) {
        ParamPoint p(b.id == "L-INEQB2" || b.id == "L-INEQB21" || b.id == "L-INEQB5" ||
                             b.id == "L-NEAT"
                         ? 0.0
                         : 1.5,
                     0.5, 0.0);
        CAPTURE(b.id);
        if (b.validity(p) == nullptr) CHECK(evaluate_bound(b.id, p).is_zero());
    }
}

TEST_CASE("plain exponential-Bessel upper bound value and side") {
    const ParamPoint p(1.0, 0.5, 10.0);
    const LogValue expected = scale(
        LogValue::from_log(-5.0 + std::log(10.0)) * bessel_i_scaled(Order(1.0), 10.0),
        2.0);
    CHECK(evaluate_bound("U-GAU2", p).ratio_to(expected) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integral_f(p) < evaluate_bound("U-GAU2", p));
}

TEST_CASE("truncated geometric sum reproduces the published cell") {
    const ParamPoint p(1.0, 0.25, 0.5);
    const LogValue f = integral_f(p);
    const LogValue l = evaluate_bound("L-INEQB4", p, TruncatedSum{5});
    const double rel = (f - l).ratio_to(f);
    CHECK(std::abs(rel - 0.2563) < 2e-4);
    // adaptive truncation is at least as sharp as any fixed depth
    CHECK(evaluate_bound("L-INEQB4X", p) >= l);
    CHECK(evaluate_bound("L-INEQB4X", p) <= f);
}

TEST_CASE("pointwise orderings between related bounds") {
    for (double gamma : {0.25, 0.75})
        for (double x : {0.5, 5.0, 50.0}) {
            // the truncated-sum bound improves on the single-term bound
            for (double nu : {-0.4, 0.0, 1.0, 5.0}) {
                ParamPoint p(nu, gamma, x);
                CAPTURE(nu);
                CAPTURE(gamma);
                CAPTURE(x);
                CHECK(evaluate_bound("L-INEQB4", p) >= evaluate_bound("L-OLD", p));
            }
            // dropping the negative I_{nu+3} term weakens the upper bound
            for (double nu : {0.5, 1.0, 5.0}) {
                ParamPoint p(nu, gamma, x);
                CAPTURE(nu);
                CAPTURE(gamma);
                CAPTURE(x);
                CHECK(evaluate_bound("U-GAU1", p) >= evaluate_bound("U-GAU9", p));
            }
        }
}

TEST_CASE("order-shift bounds hold for the smaller companion integral too") {
    // L-INEQB21/22/23 bound G, which is strictly below F, so they also sit
    // below F itself.
    const double gamma = 0.5;
    for (double x : {1.0, 10.0, 100.0}) {
        CAPTURE(x);
        ParamPoint p21(-0.25, gamma, x);
        CHECK(evaluate_bound("L-INEQB21", p21) <= integral_g(p21));
        ParamPoint p22(1.5, gamma, x);
        CHECK(evaluate_bound("L-INEQB22", p22) <= integral_g(p22));
        ParamPoint p23(1.0, gamma, x);
        CHECK(evaluate_bound("L-INEQB23", p23) <= integral_g(p23));
        CHECK(integral_g(p23) < integral_f(p23));
    }
}

TEST_CASE("loose upper bounds keep the right order of magnitude") {
    // bound/F >= 1 everywhere; at large x (where the small-x blow-up
    // ~(2nu+1)/((1-gamma)x) has died off) it settles below the built-in
    // constant 2(2nu+7)/(2nu+1).
    for (double nu : {-0.4, 0.0, 1.0, 5.0}) {
        const double cap = 2.0 * (2.0 * nu + 7.0) / (2.0 * nu + 1.0);
        for (double x : {0.5, 5.0, 50.0, 500.0}) {
            ParamPoint p(nu, 0.25, x);
            const LogValue f = integral_f(p);
            CAPTURE(nu);
            CAPTURE(x);
            for (const char* id : {"U-INEQB10", "U-INEQB11"}) {
                const double ratio = evaluate_bound(id, p).ratio_to(f);
                CAPTURE(id);
                CHECK(ratio >= 1.0);
                // the limit is approached with O(nu^2/x) corrections that can
                // overshoot slightly from above
                if (x == 500.0) CHECK(ratio <= cap * 1.01);
            }
        }
    }
}

TEST_CASE("restricted-range bound holds beyond its threshold") {
    for (double nu : {-0.4, 0.0, 1.0, 5.0})
        for (double gamma : {0.25, 0.5, 0.75})
            for (double mult : {1.0, 2.0, 10.0}) {
                ParamPoint p(nu, gamma, mult * default_x_star(gamma));
                CAPTURE(nu);
                CAPTURE(gamma);
                CAPTURE(mult);
                CHECK(integral_f(p) < evaluate_bound("U-THM21", p));
            }
}
