#include <doctest.h>

#include "simplexcert/simplex.hpp"
#include "support.hpp"

using namespace simplexcert;
namespace ts = testsupport;

namespace {

// Independent diameter recomputation: brute force over all vertex pairs and
// coordinates.
Rational brute_diameter(const SimplexMatrix& m) {
    Rational best(0);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i + 1; j < m.dim(); ++j)
            for (int k = 0; k < m.dim(); ++k) {
                Rational d = abs(m.at(k, i) - m.at(k, j));
                if (d > best) best = d;
            }
    return best;
}

SimplexMatrix chain(std::initializer_list<Permutation> perms, int n) {
    return product_chain(PermutationWord(perms), n);
}

}  // namespace

TEST_CASE("barycentric matrix entries") {
    SimplexMatrix g2 = barycentric_matrix({0, 1});
    CHECK(g2.at(0, 0) == 1);
    CHECK(g2.at(0, 1) == Rational(1, 2));
    CHECK(g2.at(1, 0) == 0);
    CHECK(g2.at(1, 1) == Rational(1, 2));

    SimplexMatrix g3 = barycentric_matrix({0, 1, 2});
    for (int col = 0; col < 3; ++col)
        for (int row = 0; row < 3; ++row)
            CHECK(g3.at(row, col) == (row <= col ? Rational(1, col + 1) : Rational(0)));

    // a row permutation moves rows, not columns
    SimplexMatrix swapped = barycentric_matrix({1, 0});
    CHECK(swapped.at(0, 0) == 0);
    CHECK(swapped.at(1, 0) == 1);
    CHECK(swapped.at(0, 1) == Rational(1, 2));
    CHECK(swapped.at(1, 1) == Rational(1, 2));

    CHECK(determinant(g2) == Rational(1, 2));
    CHECK(determinant(g3) == Rational(1, 6));
    CHECK_THROWS_AS(barycentric_matrix({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("product chains") {
    CHECK(product_chain({}, 3) == SimplexMatrix::identity(3));
    SimplexMatrix g2sq = chain({{0, 1}, {0, 1}}, 2);
    CHECK(g2sq.at(0, 0) == 1);
    CHECK(g2sq.at(0, 1) == Rational(3, 4));
    CHECK(g2sq.at(1, 0) == 0);
    CHECK(g2sq.at(1, 1) == Rational(1, 4));
    // chain multiplication matches explicit matrix products
    SimplexMatrix a = barycentric_matrix({1, 0, 2});
    SimplexMatrix b = barycentric_matrix({2, 0, 1});
    CHECK(chain({{1, 0, 2}, {2, 0, 1}}, 3) == multiply(a, b));
}

TEST_CASE("diameter spot values and brute-force agreement") {
    CHECK(diameter(SimplexMatrix::identity(2)) == 1);
    CHECK(diameter(SimplexMatrix::identity(3)) == 1);
    CHECK(diameter(barycentric_matrix({0, 1})) == Rational(1, 2));
    CHECK(diameter(barycentric_matrix({0, 1, 2})) == Rational(2, 3));

    ts::Rng rng(808);
    for (int i = 0; i < 30; ++i) {
        int n = 2 + static_cast<int>(rng() % 3);
        SimplexMatrix m = ts::random_simplex_matrix(rng, n);
        CHECK(diameter(m) == brute_diameter(m));
    }
}

TEST_CASE("barycentric step contracts diameter by (n-1)/n") {
    ts::Rng rng(809);
    for (int n = 2; n <= 4; ++n) {
        Rational ratio(n - 1, n);
        for (const Permutation& sigma : all_permutations(n)) {
            SimplexMatrix m = ts::random_simplex_matrix(rng, n);
            CHECK(diameter(multiply(m, barycentric_matrix(sigma))) <=
                  ratio * diameter(m));
        }
    }
}

TEST_CASE("shrink_simplex geometry") {
    RationalPoint p{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
    Rational eps(1, 8);
    SimplexMatrix s = shrink_simplex(p, eps);
    CHECK(diameter(s) == eps);
    CHECK(determinant(s) == pow_rational(eps, 2));
    Membership inside = contains_point(s, p);
    CHECK(inside.contained);
    for (int col = 0; col < 3; ++col) {
        RationalPoint v = s.vertex(col);
        CHECK(v.on_simplex());
        for (int row = 0; row < 3; ++row)
            CHECK(v.coords[row] ==
                  (1 - eps) * p.coords[row] + (row == col ? eps : Rational(0)));
    }
    CHECK_THROWS_AS(shrink_simplex(p, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(shrink_simplex(p, Rational(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(
        shrink_simplex(RationalPoint{{Rational(1, 2), Rational(1, 4)}}, eps),
        std::invalid_argument);
}

TEST_CASE("contains_point solves the barycentric system exactly") {
    SimplexMatrix g3 = barycentric_matrix({0, 1, 2});
    Membership center = contains_point(g3, g3.center());
    CHECK(center.contained);
    Membership outside = contains_point(g3, RationalPoint::unit(3, 2));
    CHECK_FALSE(outside.contained);
    REQUIRE(outside.coords.size() == 3);
    CHECK(outside.coords[0] == 0);
    CHECK(outside.coords[1] == -2);
    CHECK(outside.coords[2] == 3);

    ts::Rng rng(4711);
    for (int i = 0; i < 25; ++i) {
        int n = 2 + static_cast<int>(rng() % 3);
        SimplexMatrix m = ts::random_simplex_matrix(rng, n);
        // vertices are contained (faces count)
        for (int col = 0; col < n; ++col)
            CHECK(contains_point(m, m.vertex(col)).contained);
        // the solution reconstructs the point: M * lambda == p, sum(lambda) == 1
        RationalPoint p = ts::random_simplex_point(rng, n);
        Membership mem = contains_point(m, p);
        Rational total(0);
        for (int row = 0; row < n; ++row) {
            Rational reconstructed(0);
            for (int col = 0; col < n; ++col)
                reconstructed += m.at(row, col) * mem.coords[col];
            CHECK(reconstructed == p.coords[row]);
        }
        for (const Rational& l : mem.coords) total += l;
        CHECK(total == 1);
    }
}

TEST_CASE("permutation enumeration and validation") {
    std::vector<Permutation> perms = all_permutations(3);
    REQUIRE(perms.size() == 6);
    CHECK(perms.front() == Permutation{0, 1, 2});
    CHECK(perms.back() == Permutation{2, 1, 0});
    for (std::size_t i = 1; i < perms.size(); ++i) CHECK(perms[i - 1] < perms[i]);
    CHECK(is_permutation({1, 0, 2}));
    CHECK_FALSE(is_permutation({}));
    CHECK_FALSE(is_permutation({0, 0}));
    CHECK_FALSE(is_permutation({0, 2}));
}

TEST_CASE("word order and serialization") {
    PermutationWord shorter = {{0, 1}};
    PermutationWord longer = {{0, 1}, {0, 1}};
    CHECK(word_less(shorter, longer));
    CHECK(word_less({{0, 1}}, {{1, 0}}));
    CHECK_FALSE(word_less(longer, longer));

    CHECK(serialize_word({}) == "e");
    CHECK(serialize_word({{1, 0, 2}, {2, 0, 1}}) == "2 1 3,3 1 2");
    CHECK(parse_word("e", 3).empty());
    CHECK(parse_word("2 1 3,3 1 2", 3) == PermutationWord{{1, 0, 2}, {2, 0, 1}});
    CHECK_THROWS_AS(parse_word("1 1", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("1 2 3", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("0 1", 2), std::invalid_argument);

    ts::Rng rng(606);
    std::vector<Permutation> perms = all_permutations(3);
    for (int i = 0; i < 20; ++i) {
        PermutationWord w;
        for (int k = static_cast<int>(rng() % 4); k > 0; --k)
            w.push_back(perms[rng() % perms.size()]);
        CHECK(parse_word(serialize_word(w), 3) == w);
    }
}

TEST_CASE("matrix text round-trip and validation") {
    SimplexMatrix g3 = barycentric_matrix({2, 0, 1});
    CHECK(parse_matrix(serialize_matrix(g3)) == g3);
    CHECK_THROWS_AS(parse_matrix(""), ParseError);
    CHECK_THROWS_AS(parse_matrix("1 0\n0"), ParseError);        // ragged row
    CHECK_THROWS_AS(parse_matrix("1 x\n0 1\n"), ParseError);    // bad entry
    try {
        parse_matrix("1 0\n0 x\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    // construction invariants
    CHECK_THROWS_AS(SimplexMatrix(2, {Rational(-1), Rational(1), Rational(2), Rational(0)}),
                    std::invalid_argument);  // negative entry
    CHECK_THROWS_AS(SimplexMatrix(2, {Rational(1), Rational(1), Rational(1), Rational(1)}),
                    std::invalid_argument);  // column sums
    CHECK_THROWS_AS(
        SimplexMatrix(2, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}),
        std::invalid_argument);  // singular
}
