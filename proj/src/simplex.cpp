#include "simplexcert/simplex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace simplexcert {

namespace {

std::size_t idx(int n, int row, int col) {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(col);
}

// Exact Gaussian elimination with partial pivoting (largest |pivot|, lowest
// row index on ties). Returns the determinant; when rhs is non-null it is
// overwritten with the solution of m * x = rhs.
Rational eliminate(int n, std::vector<Rational> m, std::vector<Rational>* rhs) {
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        Rational best(0);
        for (int row = col; row < n; ++row) {
            Rational mag = abs(m[idx(n, row, col)]);
            if (pivot < 0 || mag > best) {
                pivot = row;
                best = mag;
            }
        }
        if (best == 0) return Rational(0);
        if (pivot != col) {
            for (int j = col; j < n; ++j)
                std::swap(m[idx(n, col, j)], m[idx(n, pivot, j)]);
            if (rhs) std::swap((*rhs)[static_cast<std::size_t>(col)],
                               (*rhs)[static_cast<std::size_t>(pivot)]);
            det = -det;
        }
        const Rational& p = m[idx(n, col, col)];
        det *= p;
        for (int row = col + 1; row < n; ++row) {
            Rational factor = m[idx(n, row, col)] / p;
            if (factor == 0) continue;
            for (int j = col; j < n; ++j)
                m[idx(n, row, j)] -= factor * m[idx(n, col, j)];
            if (rhs) (*rhs)[static_cast<std::size_t>(row)] -=
                factor * (*rhs)[static_cast<std::size_t>(col)];
        }
    }
    if (rhs) {
        for (int row = n - 1; row >= 0; --row) {
            Rational acc = (*rhs)[static_cast<std::size_t>(row)];
            for (int j = row + 1; j < n; ++j)
                acc -= m[idx(n, row, j)] * (*rhs)[static_cast<std::size_t>(j)];
            (*rhs)[static_cast<std::size_t>(row)] = acc / m[idx(n, row, row)];
        }
    }
    return det;
}

}  // namespace

SimplexMatrix::SimplexMatrix(int n, std::vector<Rational> row_major_entries)
    : n_(n), a_(std::move(row_major_entries)) {
    if (n_ < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    if (a_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
        throw std::invalid_argument("matrix entry count mismatch");
    for (const auto& v : a_)
        if (v < 0) throw std::invalid_argument("negative matrix entry");
    for (int col = 0; col < n_; ++col) {
        Rational s(0);
        for (int row = 0; row < n_; ++row) s += a_[idx(n_, row, col)];
        if (s != 1) throw std::invalid_argument("column sum is not 1");
    }
    if (eliminate(n_, a_, nullptr) == 0)
        throw std::invalid_argument("singular matrix: columns not affinely independent");
}

SimplexMatrix SimplexMatrix::identity(int n) {
    if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    std::vector<Rational> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                            Rational(0));
    for (int i = 0; i < n; ++i) a[idx(n, i, i)] = 1;
    return SimplexMatrix(n, std::move(a));
}

const Rational& SimplexMatrix::at(int row, int col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_)
        throw std::out_of_range("matrix index");
    return a_[idx(n_, row, col)];
}

RationalPoint SimplexMatrix::vertex(int col) const {
    if (col < 0 || col >= n_) throw std::out_of_range("vertex index");
    std::vector<Rational> c(static_cast<std::size_t>(n_));
    for (int row = 0; row < n_; ++row) c[static_cast<std::size_t>(row)] = at(row, col);
    return RationalPoint(std::move(c));
}

RationalPoint SimplexMatrix::center() const {
    std::vector<Rational> c(static_cast<std::size_t>(n_), Rational(0));
    for (int row = 0; row < n_; ++row) {
        for (int col = 0; col < n_; ++col) c[static_cast<std::size_t>(row)] += at(row, col);
        c[static_cast<std::size_t>(row)] /= n_;
    }
    return RationalPoint(std::move(c));
}

bool SimplexMatrix::operator==(const SimplexMatrix& o) const {
    return n_ == o.n_ && a_ == o.a_;
}

SimplexMatrix multiply(const SimplexMatrix& a, const SimplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    int n = a.dim();
    std::vector<Rational> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                              Rational(0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Rational& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < n; ++j) out[idx(n, i, j)] += aik * b.at(k, j);
        }
    return SimplexMatrix(n, std::move(out));
}

Rational determinant(const SimplexMatrix& m) {
    int n = m.dim();
    std::vector<Rational> a;
    a.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.push_back(m.at(i, j));
    return eliminate(n, std::move(a), nullptr);
}

bool is_permutation(const Permutation& sigma) {
    int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(sigma.size(), false);
    for (int v : sigma) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return n > 0;
}

SimplexMatrix barycentric_matrix(const Permutation& sigma) {
    if (!is_permutation(sigma)) throw std::invalid_argument("invalid permutation");
    int n = static_cast<int>(sigma.size());
    std::vector<Rational> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                            Rational(0));
    // row i of the identity-permutation matrix goes to row sigma[i]
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            a[idx(n, sigma[static_cast<std::size_t>(i)], j)] = Rational(1, j + 1);
    return SimplexMatrix(n, std::move(a));
}

SimplexMatrix product_chain(const PermutationWord& word, int n) {
    SimplexMatrix result = SimplexMatrix::identity(n);
    for (const auto& sigma : word) {
        if (static_cast<int>(sigma.size()) != n)
            throw std::invalid_argument("permutation size mismatch in word");
        result = multiply(result, barycentric_matrix(sigma));
    }
    return result;
}

Rational diameter(const SimplexMatrix& m) {
    int n = m.dim();
    Rational best(0);
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) {
            Rational dist(0);
            for (int i = 0; i < n; ++i) {
                Rational diff = abs(m.at(i, s) - m.at(i, t));
                if (diff > dist) dist = diff;
            }
            if (dist > best) best = dist;
        }
    return best;
}

SimplexMatrix shrink_simplex(const RationalPoint& p, const Rational& eps) {
    if (!p.on_simplex()) throw std::invalid_argument("point not on the simplex");
    if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must be in (0, 1]");
    int n = p.size();
    std::vector<Rational> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    Rational keep = 1 - eps;
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col) {
            Rational v = keep * p.coords[static_cast<std::size_t>(row)];
            if (row == col) v += eps;
            a[idx(n, row, col)] = v;
        }
    return SimplexMatrix(n, std::move(a));
}

Membership contains_point(const SimplexMatrix& m, const RationalPoint& p) {
    if (p.size() != m.dim()) throw std::invalid_argument("point dimension mismatch");
    int n = m.dim();
    std::vector<Rational> a;
    a.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.push_back(m.at(i, j));
    std::vector<Rational> x = p.coords;
    Rational det = eliminate(n, std::move(a), &x);
    if (det == 0) throw std::invalid_argument("singular matrix");
    bool inside = std::all_of(x.begin(), x.end(),
                              [](const Rational& v) { return v >= 0; });
    return Membership{inside, std::move(x)};
}

std::vector<Permutation> all_permutations(int n) {
    Permutation sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

bool word_less(const PermutationWord& a, const PermutationWord& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string serialize_matrix(const SimplexMatrix& m) {
    std::ostringstream os;
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            if (j > 0) os << ' ';
            os << to_string(m.at(i, j));
        }
        os << '\n';
    }
    return os.str();
}

SimplexMatrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::vector<Rational>> rows;
    int line_number = 0;
    while (std::getline(is, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        std::vector<Rational> row;
        while (ls >> tok) {
            try {
                row.push_back(parse_rational(tok));
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_number, e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(line_number, "empty matrix");
    int n = static_cast<int>(rows.size());
    std::vector<Rational> a;
    a.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw ParseError(i + 1, "matrix row length does not match row count");
        for (auto& v : rows[static_cast<std::size_t>(i)]) a.push_back(std::move(v));
    }
    return SimplexMatrix(n, std::move(a));
}

std::string serialize_word(const PermutationWord& word) {
    if (word.empty()) return "e";
    std::ostringstream os;
    for (std::size_t w = 0; w < word.size(); ++w) {
        if (w > 0) os << ',';
        for (std::size_t i = 0; i < word[w].size(); ++i) {
            if (i > 0) os << ' ';
            os << word[w][i] + 1;
        }
    }
    return os.str();
}

PermutationWord parse_word(const std::string& text, int n) {
    std::string trimmed;
    std::size_t b = text.find_first_not_of(" \t");
    std::size_t e = text.find_last_not_of(" \t");
    if (b != std::string::npos) trimmed = text.substr(b, e - b + 1);
    if (trimmed.empty() || trimmed == "e") return {};
    PermutationWord word;
    std::istringstream parts(trimmed);
    std::string part;
    while (std::getline(parts, part, ',')) {
        std::istringstream ps(part);
        Permutation sigma;
        int image = 0;
        while (ps >> image) sigma.push_back(image - 1);
        if (static_cast<int>(sigma.size()) != n || !is_permutation(sigma))
            throw std::invalid_argument("bad permutation in word: '" + part + "'");
        word.push_back(std::move(sigma));
    }
    return word;
}

}  // namespace simplexcert
