#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "simplexcert/rational.hpp"

namespace simplexcert {

// Thrown by the text parsers; `line` is 1-based and counts every input line.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

// Exponent vector of one monomial. The owning Form fixes the variable count
// and the common total degree.
class Monomial {
public:
    explicit Monomial(std::vector<int> exponents);

    int size() const { return static_cast<int>(exps_.size()); }
    int degree() const;
    int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& exponents() const { return exps_; }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    // Graded lexicographic: lower total degree first, then lexicographically
    // larger exponent vector first (x^2 before xy before y^2). This is the
    // canonical serialization and iteration order.
    bool operator<(const Monomial& o) const;

private:
    std::vector<int> exps_;
};

struct RationalPoint {
    std::vector<Rational> coords;

    RationalPoint() = default;
    explicit RationalPoint(std::vector<Rational> c) : coords(std::move(c)) {}

    int size() const { return static_cast<int>(coords.size()); }
    static RationalPoint unit(int n, int i);  // e_i, 0-based
    Rational coordinate_sum() const;
    // Membership in the standard simplex: nonnegative coordinates summing
    // to exactly 1.
    bool on_simplex() const;
    bool operator==(const RationalPoint& o) const { return coords == o.coords; }
};

// Sparse homogeneous polynomial with exact rational coefficients. Immutable
// value type: every stored coefficient is nonzero and every monomial has
// total degree `degree()`. The zero form keeps an explicit (n, d) header.
class Form {
public:
    using TermMap = std::map<Monomial, Rational>;

    Form(int variable_count, int degree);  // zero form
    static Form constant(int variable_count, const Rational& value);
    static Form variable(int variable_count, int index);  // x_index, 0-based
    // Sums duplicate monomials, drops zero coefficients, validates exponent
    // count and homogeneity against (variable_count, degree).
    static Form from_terms(int variable_count, int degree,
                           const std::vector<std::pair<Monomial, Rational>>& terms);

    int variable_count() const { return n_; }
    int degree() const { return d_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool operator==(const Form& o) const;
    Form operator-() const;

    Rational evaluate(const std::vector<Rational>& x) const;
    Rational evaluate(const RationalPoint& p) const { return evaluate(p.coords); }

private:
    int n_;
    int d_;
    TermMap terms_;
};

Form add(const Form& f, const Form& g);       // requires equal n and d
Form multiply(const Form& f, const Form& g);  // requires equal n
Form multiply(const Rational& c, const Form& f);
Form power(const Form& f, int k);             // f^0 is the degree-0 form 1

inline Form operator+(const Form& f, const Form& g) { return add(f, g); }
inline Form operator-(const Form& f, const Form& g) { return add(f, -g); }
inline Form operator*(const Form& f, const Form& g) { return multiply(f, g); }
inline Form operator*(const Rational& c, const Form& f) { return multiply(c, f); }

// Exact partial derivative D^alpha f, homogeneous of degree d - |alpha|.
// |alpha| > d yields the zero form (of degree 0), not an error.
Form derivative(const Form& f, const Monomial& alpha);

// Comma-separated rationals, e.g. "1/2,1/2"; used inside certificate lines.
std::string serialize_point(const RationalPoint& p);
RationalPoint parse_point(const std::string& text);  // throws std::invalid_argument

// Text format: optional '#' comment lines; first non-comment line "n d";
// each further non-blank line "<coeff> <e1> ... <en>" with coeff an integer
// or "p/q". Duplicate monomials are summed. parse(serialize(f)) == f.
Form parse_form(const std::string& text);
std::string serialize_form(const Form& f);

// Multiple forms separated by lines containing only "---". Reported line
// numbers refer to the whole input.
std::vector<Form> parse_system(const std::string& text);
std::string serialize_system(const std::vector<Form>& forms);

}  // namespace simplexcert
