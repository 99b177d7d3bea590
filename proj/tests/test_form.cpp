#include <doctest.h>

#include <algorithm>

#include "simplexcert/form.hpp"
#include "support.hpp"

using namespace simplexcert;
namespace ts = testsupport;

namespace {

Form make(int n, int d, std::vector<std::pair<std::vector<int>, Rational>> raw) {
    std::vector<std::pair<Monomial, Rational>> terms;
    for (auto& [e, c] : raw) terms.emplace_back(Monomial(e), c);
    return Form::from_terms(n, d, terms);
}

}  // namespace

TEST_CASE("monomial graded-lex order puts x^2 before xy before y^2") {
    Monomial x2({2, 0}), xy({1, 1}), y2({0, 2});
    CHECK(x2 < xy);
    CHECK(xy < y2);
    CHECK_FALSE(y2 < x2);
    // lower total degree sorts first regardless of the pattern
    CHECK(Monomial({0, 1}) < Monomial({2, 0}));
    Form f = make(2, 2, {{{0, 2}, 1}, {{1, 1}, -1}, {{2, 0}, 1}});
    CHECK(serialize_form(f) == "2 2\n1 2 0\n-1 1 1\n1 0 2\n");
}

TEST_CASE("from_terms merges duplicates and drops cancellations") {
    Form f = make(2, 1, {{{1, 0}, 1}, {{1, 0}, 2}, {{0, 1}, 3}, {{0, 1}, -3}});
    CHECK(f.term_count() == 1);
    CHECK(f.evaluate({Rational(1), Rational(0)}) == 3);
    CHECK_THROWS_AS(make(2, 2, {{{1, 0}, 1}}), std::invalid_argument);  // wrong degree
    CHECK_THROWS_AS(make(3, 1, {{{1, 0}, 1}}), std::invalid_argument);  // wrong arity
}

TEST_CASE("parse_form accepts comments and blank lines") {
    Form f = parse_form("# leading comment\n\n2 1\n# term next\n2 1 0\n1 0 1\n\n");
    CHECK(f.variable_count() == 2);
    CHECK(f.degree() == 1);
    CHECK(f.term_count() == 2);
    CHECK(f.evaluate({Rational(1), Rational(1)}) == 3);
}

TEST_CASE("parse_form reports 1-based line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_form(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(line_of("") == 1);                              // missing header
    CHECK(line_of("2\n") == 1);                           // short header
    CHECK(line_of("2 1\n1 1\n") == 2);                    // missing exponent
    CHECK(line_of("2 1\n1 1 0\nx 0 1\n") == 3);           // bad coefficient
    CHECK(line_of("2 1\n1 1 0\n1 0 2\n") == 3);           // inhomogeneous
    CHECK(line_of("# c\n\n2 1\n1 -1 2\n") == 4);          // negative exponent
    CHECK(line_of("2 1\n1 1 0\n---\n") == 3);             // stray separator
}

TEST_CASE("serialize/parse round-trips random forms unchanged") {
    ts::Rng rng(424242);
    for (int i = 0; i < 50; ++i) {
        int n = 2 + static_cast<int>(rng() % 3);
        int d = 1 + static_cast<int>(rng() % 4);
        Form f = ts::random_form(rng, n, d);
        CHECK(parse_form(serialize_form(f)) == f);
    }
}

TEST_CASE("term order in the input does not affect the form") {
    std::vector<std::pair<Monomial, Rational>> terms = {
        {Monomial({0, 2}), Rational(3)},
        {Monomial({2, 0}), Rational(1)},
        {Monomial({1, 1}), Rational(-2)},
    };
    Form a = Form::from_terms(2, 2, terms);
    std::reverse(terms.begin(), terms.end());
    Form b = Form::from_terms(2, 2, terms);
    CHECK(a == b);
    CHECK(serialize_form(a) == serialize_form(b));
}

TEST_CASE("evaluation is exact and homogeneous") {
    Form f = make(2, 2, {{{2, 0}, 1}, {{1, 1}, -1}, {{0, 2}, 1}});
    CHECK(f.evaluate({Rational(1, 2), Rational(1, 2)}) == Rational(1, 4));
    CHECK(f.evaluate({Rational(1), Rational(0)}) == 1);

    ts::Rng rng(99);
    const Rational lambda(3, 2);
    for (int i = 0; i < 30; ++i) {
        int n = 2 + static_cast<int>(rng() % 3);
        int d = 1 + static_cast<int>(rng() % 4);
        Form g = ts::random_form(rng, n, d);
        RationalPoint p = ts::random_simplex_point(rng, n);
        std::vector<Rational> scaled = p.coords;
        for (Rational& c : scaled) c *= lambda;
        CHECK(g.evaluate(scaled) == pow_rational(lambda, d) * g.evaluate(p));
    }
}

TEST_CASE("arithmetic identities") {
    Form x = Form::variable(2, 0);
    Form y = Form::variable(2, 1);
    Form sum_sq = power(add(x, y), 2);
    CHECK(sum_sq == make(2, 2, {{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}}));
    CHECK(multiply(x, y).degree() == 2);
    CHECK((x + y) - (x + y) == Form(2, 1));
    CHECK((-(x + y)).evaluate({Rational(1), Rational(2)}) == -3);
    CHECK(power(x, 0) == Form::constant(2, Rational(1)));
}

TEST_CASE("derivative spot values") {
    Form f = make(2, 2, {{{2, 0}, 1}, {{1, 1}, 1}});  // x^2 + xy
    Form dx = derivative(f, Monomial({1, 0}));
    CHECK(dx == make(2, 1, {{{1, 0}, 2}, {{0, 1}, 1}}));  // 2x + y
    Form dxx = derivative(f, Monomial({2, 0}));
    CHECK(dxx == Form::constant(2, Rational(2)));
    CHECK(derivative(f, Monomial({0, 2})).is_zero());
    CHECK(derivative(f, Monomial({0, 0})) == f);
}

TEST_CASE("mixed partials commute and compose") {
    ts::Rng rng(1234);
    for (int i = 0; i < 20; ++i) {
        int n = 2 + static_cast<int>(rng() % 2);
        Form f = ts::random_form(rng, n, 4);
        std::vector<int> a(n, 0), b(n, 0);
        a[0] = 1;
        b[static_cast<std::size_t>(n) - 1] = 2;
        std::vector<int> ab(n, 0);
        for (int j = 0; j < n; ++j) ab[j] = a[j] + b[j];
        Form one_shot = derivative(f, Monomial(ab));
        Form stepped = derivative(derivative(f, Monomial(a)), Monomial(b));
        Form swapped = derivative(derivative(f, Monomial(b)), Monomial(a));
        CHECK(one_shot == stepped);
        CHECK(one_shot == swapped);
    }
}

TEST_CASE("points: units, simplex membership, serialization") {
    RationalPoint e1 = RationalPoint::unit(3, 0);
    CHECK(e1.coords == std::vector<Rational>{1, 0, 0});
    CHECK(e1.on_simplex());
    CHECK(e1.coordinate_sum() == 1);
    RationalPoint off{{Rational(1, 2), Rational(1, 4)}};
    CHECK_FALSE(off.on_simplex());
    RationalPoint neg{{Rational(3, 2), Rational(-1, 2)}};
    CHECK_FALSE(neg.on_simplex());

    RationalPoint p{{Rational(1, 3), Rational(2, 3)}};
    CHECK(serialize_point(p) == "1/3,2/3");
    CHECK(parse_point("1/3,2/3") == p);
    ts::Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        RationalPoint q = ts::random_simplex_point(rng, 3);
        CHECK(parse_point(serialize_point(q)) == q);
    }
}

TEST_CASE("system parse and serialize round-trip") {
    std::string text = "2 1\n1 1 0\n-1 0 1\n---\n2 2\n2 2 0\n-2 1 1\n1 0 2\n";
    std::vector<Form> forms = parse_system(text);
    REQUIRE(forms.size() == 2);
    CHECK(forms[0].degree() == 1);
    CHECK(forms[1].degree() == 2);
    CHECK(serialize_system(forms) == text);
    // line numbers keep counting across blocks
    try {
        parse_system("2 1\n1 1 0\n---\n2 1\nbad 1 0\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 5);
    }
    CHECK_THROWS_AS(parse_system(""), ParseError);
}
