#include "simplexcert/expansion.hpp"

#include <algorithm>
#include <stdexcept>

namespace simplexcert {

const char* to_string(SignClass c) {
    switch (c) {
        case SignClass::AllPositive: return "AllPositive";
        case SignClass::AllNonnegative: return "AllNonnegative";
        case SignClass::AllNegative: return "AllNegative";
        case SignClass::AllNonpositive: return "AllNonpositive";
        case SignClass::Mixed: return "Mixed";
        case SignClass::ZeroForm: return "ZeroForm";
    }
    throw std::logic_error("unreachable");
}

SignClass sign_class_from_string(const std::string& s) {
    for (SignClass c : {SignClass::AllPositive, SignClass::AllNonnegative,
                        SignClass::AllNegative, SignClass::AllNonpositive,
                        SignClass::Mixed, SignClass::ZeroForm})
        if (s == to_string(c)) return c;
    throw std::invalid_argument("unknown sign class: '" + s + "'");
}

Integer monomial_slot_count(int n, int d) {
    if (n < 1 || d < 0) throw std::invalid_argument("bad slot count arguments");
    return binomial(static_cast<unsigned long>(n + d - 1),
                    static_cast<unsigned long>(d));
}

namespace {

using Term = std::pair<const Monomial*, const Rational*>;

// Substitutes variables [var..n) of the given same-total-degree terms by the
// linear forms `rows`, Horner-style over the exponent of `var`. `remaining`
// is the shared total degree of the unconsumed exponents.
Form substitute_tail(const std::vector<Term>& terms, int var, int remaining,
                     const std::vector<Form>& rows,
                     std::vector<std::vector<Form>>& power_cache) {
    int n_new = rows.front().variable_count();
    int n_old = static_cast<int>(rows.size());
    if (terms.empty()) return Form(n_new, remaining);
    if (remaining == 0) {
        // all exponents consumed; at most one (constant) term survives
        Rational c(0);
        for (const auto& [mono, coeff] : terms) c += *coeff;
        return Form::constant(n_new, c);
    }
    if (var == n_old - 1) {
        // last variable: homogeneity pins its exponent to `remaining`
        Rational c(0);
        for (const auto& [mono, coeff] : terms) c += *coeff;
        auto& cache = power_cache[static_cast<std::size_t>(var)];
        while (static_cast<int>(cache.size()) <= remaining)
            cache.push_back(multiply(cache.back(), rows[static_cast<std::size_t>(var)]));
        return multiply(c, cache[static_cast<std::size_t>(remaining)]);
    }
    // bucket by the exponent of `var`
    int max_exp = 0;
    for (const auto& [mono, coeff] : terms)
        max_exp = std::max(max_exp, (*mono)[var]);
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(max_exp) + 1);
    for (const auto& term : terms)
        buckets[static_cast<std::size_t>((*term.first)[var])].push_back(term);

    Form acc = substitute_tail(buckets[static_cast<std::size_t>(max_exp)], var + 1,
                               remaining - max_exp, rows, power_cache);
    for (int e = max_exp - 1; e >= 0; --e) {
        acc = multiply(acc, rows[static_cast<std::size_t>(var)]);
        if (!buckets[static_cast<std::size_t>(e)].empty())
            acc = add(acc, substitute_tail(buckets[static_cast<std::size_t>(e)],
                                           var + 1, remaining - e, rows, power_cache));
    }
    return acc;
}

}  // namespace

Form expand(const Form& f, const SimplexMatrix& m) {
    if (f.variable_count() != m.dim())
        throw std::invalid_argument("expand: dimension mismatch");
    int n = f.variable_count();
    if (f.is_zero()) return Form(n, f.degree());

    // old variable i becomes the linear form given by row i of the matrix
    std::vector<Form> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Form row(n, 1);
        std::vector<std::pair<Monomial, Rational>> terms;
        for (int j = 0; j < n; ++j) {
            if (m.at(i, j) == 0) continue;
            std::vector<int> e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(j)] = 1;
            terms.emplace_back(Monomial(std::move(e)), m.at(i, j));
        }
        rows.push_back(Form::from_terms(n, 1, terms));
    }

    std::vector<std::vector<Form>> power_cache(static_cast<std::size_t>(n));
    for (auto& cache : power_cache) cache.push_back(Form::constant(n, 1));

    std::vector<Term> terms;
    terms.reserve(f.term_count());
    for (const auto& [mono, coeff] : f.terms()) terms.emplace_back(&mono, &coeff);
    return substitute_tail(terms, 0, f.degree(), rows, power_cache);
}

SignClass sign_classify(const Form& f) {
    if (f.is_zero()) return SignClass::ZeroForm;
    bool any_positive = false, any_negative = false;
    for (const auto& [mono, coeff] : f.terms()) {
        if (coeff > 0) any_positive = true;
        else any_negative = true;
        if (any_positive && any_negative) return SignClass::Mixed;
    }
    // present coefficients share one strict sign; the class is strict only
    // when every monomial slot is filled
    bool full = Integer(static_cast<unsigned long>(f.term_count())) ==
                monomial_slot_count(f.variable_count(), f.degree());
    if (any_positive) return full ? SignClass::AllPositive : SignClass::AllNonnegative;
    return full ? SignClass::AllNegative : SignClass::AllNonpositive;
}

int cell_center_sign(const Form& f, const SimplexMatrix& m) {
    if (f.variable_count() != m.dim())
        throw std::invalid_argument("cell_center_sign: dimension mismatch");
    // the cell center is M applied to the simplex center (1/n, ..., 1/n);
    // homogeneity lets us drop the 1/n factor when only the sign is wanted
    std::vector<Rational> scaled_center(static_cast<std::size_t>(m.dim()), Rational(0));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            scaled_center[static_cast<std::size_t>(i)] += m.at(i, j);
    return sign(f.evaluate(scaled_center));
}

}  // namespace simplexcert
