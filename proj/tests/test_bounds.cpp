#include <doctest.h>

#include "simplexcert/bounds.hpp"
#include "simplexcert/expansion.hpp"
#include "support.hpp"

using namespace simplexcert;
namespace ts = testsupport;

namespace {

Form make(int n, int d, std::vector<std::pair<std::vector<int>, Rational>> raw) {
    std::vector<std::pair<Monomial, Rational>> terms;
    for (auto& [e, c] : raw) terms.emplace_back(Monomial(e), c);
    return Form::from_terms(n, d, terms);
}

Form two_x_plus_y() { return make(2, 1, {{{1, 0}, 2}, {{0, 1}, 1}}); }
Form sum_of_squares() { return make(2, 2, {{{2, 0}, 1}, {{0, 2}, 1}}); }

// prefix of the sign threshold, recomputed independently
Rational threshold_prefix(int n, int d, const Rational& l) {
    return Rational(d) * Rational(factorial(d)) * Rational(binomial(n + d - 1, d)) * l;
}

}  // namespace

TEST_CASE("normalized height applies the multinomial convention") {
    CHECK(normalized_height(two_x_plus_y()) == 2);
    CHECK(normalized_height(power(two_x_plus_y(), 1)) == 2);
    Form cube = power(make(2, 1, {{{1, 0}, 1}, {{0, 1}, 1}}), 3);  // (x+y)^3
    CHECK(normalized_height(cube) == 1);  // 3 * 2!/3! = 1, 1 * 3!/3! = 1
    CHECK(normalized_height(sum_of_squares()) == 1);
    CHECK(normalized_height(make(2, 2, {{{1, 1}, -4}})) == 2);  // 4 * 1!1!/2!
    CHECK_THROWS_AS(normalized_height(Form(2, 2)), std::domain_error);
}

TEST_CASE("raw height is the max absolute coefficient") {
    CHECK(raw_height(two_x_plus_y()) == 2);
    CHECK(raw_height(make(2, 2, {{{2, 0}, 1}, {{1, 1}, -7}})) == 7);
    CHECK_THROWS_AS(raw_height(Form(2, 2)), std::domain_error);
}

TEST_CASE("derivative bound is d! times the normalized height") {
    CHECK(derivative_bound(two_x_plus_y()) == 2);
    CHECK(derivative_bound(sum_of_squares()) == 2);
    Form cubic = make(2, 3, {{{3, 0}, 1}, {{1, 2}, -4}, {{0, 3}, 2}});
    CHECK(derivative_bound(cubic) == Rational(factorial(3)) * normalized_height(cubic));

    // the bound really dominates every partial derivative on the simplex
    ts::Rng rng(606060);
    for (int i = 0; i < 30; ++i) {
        int n = 2 + static_cast<int>(rng() % 2);
        int d = 1 + static_cast<int>(rng() % 3);
        Form f = ts::random_form(rng, n, d);
        Rational bound = derivative_bound(f);
        std::vector<Monomial> alphas = ts::multi_indices_up_to(n, d);
        for (int k = 0; k < 10; ++k) {
            RationalPoint p = ts::random_simplex_point(rng, n);
            for (const Monomial& alpha : alphas)
                CHECK(abs(derivative(f, alpha).evaluate(p)) <= bound);
        }
    }
}

TEST_CASE("expansion sign threshold spot values") {
    RationalPoint half{{Rational(1, 2), Rational(1, 2)}};
    BoundReport linear = expansion_sign_threshold(two_x_plus_y(), half);
    CHECK(linear.kind == "expansion-sign-threshold");
    CHECK(*linear.value_exact == Rational(3, 8));
    CHECK_FALSE(linear.log2_is_authoritative);
    BoundReport quad = expansion_sign_threshold(sum_of_squares(), half);
    CHECK(*quad.value_exact == Rational(1, 24));
    // |f(P)| = 0 gives a zero threshold rather than an error
    Form diff = make(2, 1, {{{1, 0}, 1}, {{0, 1}, -1}});
    CHECK(*expansion_sign_threshold(diff, half).value_exact == 0);
    // negating the form does not change the threshold
    CHECK(*expansion_sign_threshold(-two_x_plus_y(), half).value_exact == Rational(3, 8));
}

TEST_CASE("expansion sign threshold satisfies its defining identity") {
    ts::Rng rng(161616);
    for (int i = 0; i < 40; ++i) {
        int n = 2 + static_cast<int>(rng() % 3);
        int d = 1 + static_cast<int>(rng() % 4);
        Form f = ts::random_form(rng, n, d);
        RationalPoint p = ts::random_interior_point(rng, n);
        Rational t = *expansion_sign_threshold(f, p).value_exact;
        CHECK(t * threshold_prefix(n, d, normalized_height(f)) == abs(f.evaluate(p)));
    }
}

TEST_CASE("threshold from an externally proven minimum") {
    BoundReport r = expansion_sign_threshold_from_min(sum_of_squares(), Rational(1, 2));
    CHECK(r.kind == "sign-threshold-from-min");
    CHECK(*r.value_exact == Rational(1, 24));
    CHECK(*expansion_sign_threshold_from_min(two_x_plus_y(), Rational(3, 2)).value_exact ==
          Rational(3, 8));
}

TEST_CASE("adjusted height floors at 4n + 2") {
    CHECK(adjusted_height(Rational(2), 2) == 10);
    CHECK(adjusted_height(Rational(100), 2) == 100);
    CHECK(adjusted_height(Rational(1), 3) == 14);
    CHECK(adjusted_height(Rational(14), 3) == 14);
    CHECK_THROWS_AS(adjusted_height(Rational(1, 2), 2), std::domain_error);
}

TEST_CASE("minimum-value lower bound reports a sound log2") {
    BoundReport r = min_value_lower_bound(2, 2, Rational(10));
    CHECK(r.kind == "min-value-lower-bound");
    CHECK(r.log2_is_authoritative);
    REQUIRE(r.value_log2.has_value());
    CHECK(format_fixed(*r.value_log2, 6) == "-266.301700");
    bool saw_exponent = false;
    for (const auto& [k, v] : r.inputs)
        if (k == "exponent") {
            saw_exponent = true;
            CHECK(v == "32");
        }
    CHECK(saw_exponent);

    // growing the height can only weaken (lower) the bound
    BoundReport taller = min_value_lower_bound(2, 2, Rational(1000));
    CHECK(*taller.value_log2 < *r.value_log2);
    // so can growing the degree or dimension
    CHECK(*min_value_lower_bound(2, 4, Rational(10)).value_log2 < *r.value_log2);
    CHECK(*min_value_lower_bound(3, 2, Rational(14)).value_log2 < *r.value_log2);
}

TEST_CASE("required depth is the minimal contraction count") {
    CHECK(required_depth(2, Rational(3, 8)) == 2);
    CHECK(required_depth(2, Rational(1)) == 1);
    CHECK(required_depth(2, Rational(2)) == 1);  // clamp: depth is at least 1
    CHECK(required_depth(1, Rational(1, 1000)) == 1);
    CHECK(required_depth(2, pow_rational(Rational(1, 2), 10)) == 11);

    ts::Rng rng(123321);
    std::uniform_int_distribution<long> num(1, 999);
    for (int i = 0; i < 40; ++i) {
        int n = 2 + static_cast<int>(rng() % 3);
        Rational t = Rational(num(rng)) / Rational(1000);
        Integer depth = required_depth(n, t);
        Rational ratio(n - 1, n);
        long k = depth.get_si();
        REQUIRE(k >= 1);
        CHECK(pow_rational(ratio, static_cast<int>(k)) < t);
        if (k > 1) CHECK(pow_rational(ratio, static_cast<int>(k - 1)) >= t);
    }
}

TEST_CASE("log2-based depth matches the exact one up to sound rounding") {
    CHECK(required_depth_log2(2, parse_decimal("-269.886662")) == 270);
    ts::Rng rng(77177);
    std::uniform_int_distribution<long> num(1, 999);
    for (int i = 0; i < 30; ++i) {
        int n = 2 + static_cast<int>(rng() % 3);
        Rational t = Rational(num(rng)) / Rational(1000);
        Integer exact = required_depth(n, t);
        Integer logged = required_depth_log2(n, log2_rational(t, Round::Down));
        CHECK(logged >= exact);           // rounding may only deepen the walk
        CHECK(logged - exact <= 1);
    }
}

TEST_CASE("bound report text layout") {
    BoundReport r;
    r.kind = "raw-height";
    r.value_exact = raw_height(two_x_plus_y());
    r.value_log2 = log2_rational(*r.value_exact, Round::Nearest);
    r.inputs = {{"n", "2"}, {"d", "1"}};
    CHECK(r.to_text() ==
          "bound kind=raw-height\n"
          "authoritative=exact\n"
          "value=2\n"
          "value-log2=1.000000\n"
          "input n=2\n"
          "input d=1\n");
}
