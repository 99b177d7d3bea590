#pragma once

#include <string>
#include <vector>

#include "simplexcert/form.hpp"
#include "simplexcert/rational.hpp"

namespace simplexcert {

// Permutation of {0..n-1} as its image vector; serialized 1-based.
using Permutation = std::vector<int>;

// Word of permutations naming a chain of barycentric matrices. The empty
// word denotes the standard simplex itself.
using PermutationWord = std::vector<Permutation>;

// Sub-simplex of the standard simplex: n affinely independent points of the
// simplex as columns of a nonnegative column-stochastic matrix. Construction
// validates all three invariants (entries >= 0, column sums exactly 1,
// determinant nonzero).
class SimplexMatrix {
public:
    SimplexMatrix(int n, std::vector<Rational> row_major_entries);
    static SimplexMatrix identity(int n);

    int dim() const { return n_; }
    const Rational& at(int row, int col) const;
    RationalPoint vertex(int col) const;  // column as a simplex point, 0-based
    // Column sums of the matrix times 1/n: the cell's barycenter, on the
    // standard simplex.
    RationalPoint center() const;
    bool operator==(const SimplexMatrix& o) const;

private:
    int n_;
    std::vector<Rational> a_;  // row-major
};

SimplexMatrix multiply(const SimplexMatrix& a, const SimplexMatrix& b);
Rational determinant(const SimplexMatrix& m);

// Upper-triangular matrix with column j constant 1/(j+1) on and above the
// diagonal, rows permuted by sigma (identity permutation gives the matrix
// itself). The n! row permutations are exactly the barycentric matrices of
// one subdivision step.
SimplexMatrix barycentric_matrix(const Permutation& sigma);

// Exact product of the word's barycentric matrices, in order; the empty
// word gives the identity.
SimplexMatrix product_chain(const PermutationWord& word, int n);

// Max infinity-norm distance over vertex pairs (attained at vertices).
Rational diameter(const SimplexMatrix& m);

// Simplex with columns (1-eps)*P + eps*e_i: contains P, diameter eps,
// determinant eps^(n-1). Requires P on the simplex and 0 < eps <= 1.
SimplexMatrix shrink_simplex(const RationalPoint& p, const Rational& eps);

struct Membership {
    bool contained;                  // all barycentric coordinates >= 0
    std::vector<Rational> coords;    // exact solution of [M] lambda = p
};

// Exact membership test; coordinates sum to 1 automatically because the
// matrix is column-stochastic. Points on a face (some lambda_i = 0) count
// as contained.
Membership contains_point(const SimplexMatrix& m, const RationalPoint& p);

bool is_permutation(const Permutation& sigma);
std::vector<Permutation> all_permutations(int n);  // lexicographic order

// Lexicographic comparison of words element-wise; used to order children
// and certificate leaves deterministically.
bool word_less(const PermutationWord& a, const PermutationWord& b);

// Matrix text: n lines of n exact rationals. Permutation words: one-line
// notations (1-based images, space-separated) joined by commas; the empty
// word is "e".
std::string serialize_matrix(const SimplexMatrix& m);
SimplexMatrix parse_matrix(const std::string& text);
std::string serialize_word(const PermutationWord& word);
PermutationWord parse_word(const std::string& text, int n);

}  // namespace simplexcert
