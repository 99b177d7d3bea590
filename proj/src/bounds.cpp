#include "simplexcert/bounds.hpp"

#include <sstream>
#include <stdexcept>

namespace simplexcert {

std::string BoundReport::to_text() const {
    std::ostringstream out;
    out << "bound kind=" << kind << "\n";
    out << "authoritative=" << (log2_is_authoritative ? "log2" : "exact") << "\n";
    if (value_exact) out << "value=" << to_string(*value_exact) << "\n";
    if (value_log2) out << "value-log2=" << format_fixed(*value_log2, 6) << "\n";
    for (const auto& [key, val] : inputs) out << "input " << key << "=" << val << "\n";
    return out.str();
}

namespace {

Integer monomial_factorial(const Monomial& mono) {
    Integer prod(1);
    for (int i = 0; i < mono.size(); ++i)
        prod *= factorial(static_cast<unsigned long>(mono[i]));
    return prod;
}

void require_nonzero(const Form& f, const char* op) {
    if (f.is_zero())
        throw std::domain_error(std::string(op) + ": undefined for the zero form");
}

// d * d! * C(n+d-1, d): the prefix of the sign-threshold denominator.
Integer threshold_prefix(int n, int d) {
    auto du = static_cast<unsigned long>(d);
    return Integer(d) * factorial(du) *
           binomial(static_cast<unsigned long>(n + d - 1), du);
}

BoundReport sign_threshold_report(const Form& f, const Rational& numerator,
                                  const char* numerator_label, std::string kind) {
    require_nonzero(f, kind.c_str());
    if (f.degree() < 1)
        throw std::domain_error(kind + ": form must have degree at least 1");
    Rational lf = normalized_height(f);
    Rational value = numerator / (Rational(threshold_prefix(f.variable_count(), f.degree())) * lf);

    BoundReport report;
    report.kind = std::move(kind);
    report.value_exact = value;
    if (value > 0) report.value_log2 = log2_rational(value, Round::Nearest);
    report.inputs = {{"n", std::to_string(f.variable_count())},
                     {"d", std::to_string(f.degree())},
                     {"L_f", to_string(lf)},
                     {numerator_label, to_string(numerator)}};
    return report;
}

}  // namespace

Rational normalized_height(const Form& f) {
    require_nonzero(f, "normalized_height");
    Rational dfact(factorial(static_cast<unsigned long>(f.degree())));
    Rational best(0);
    for (const auto& [mono, coeff] : f.terms()) {
        Rational c = abs(coeff) * Rational(monomial_factorial(mono)) / dfact;
        if (c > best) best = c;
    }
    return best;
}

Rational raw_height(const Form& f) {
    require_nonzero(f, "raw_height");
    Rational best(0);
    for (const auto& [mono, coeff] : f.terms()) {
        Rational c = abs(coeff);
        if (c > best) best = c;
    }
    return best;
}

Rational derivative_bound(const Form& f) {
    require_nonzero(f, "derivative_bound");
    return Rational(factorial(static_cast<unsigned long>(f.degree()))) *
           normalized_height(f);
}

BoundReport expansion_sign_threshold(const Form& f, const RationalPoint& p) {
    if (static_cast<int>(p.coords.size()) != f.variable_count())
        throw std::invalid_argument("expansion_sign_threshold: dimension mismatch");
    if (!p.on_simplex())
        throw std::invalid_argument("expansion_sign_threshold: point not on the simplex");
    return sign_threshold_report(f, abs(f.evaluate(p)), "|f(P)|",
                                 "expansion-sign-threshold");
}

BoundReport expansion_sign_threshold_from_min(const Form& f,
                                              const Rational& min_lower_bound) {
    if (min_lower_bound <= 0)
        throw std::domain_error(
            "expansion_sign_threshold_from_min: lower bound must be positive");
    return sign_threshold_report(f, min_lower_bound, "min-bound",
                                 "sign-threshold-from-min");
}

Rational adjusted_height(const Rational& h, int n) {
    if (h < 1) throw std::domain_error("adjusted_height: height must be at least 1");
    Rational floor_value(4 * n + 2);
    return h > floor_value ? h : floor_value;
}

BoundReport min_value_lower_bound(int n, int two_d, const Rational& h_tilde) {
    if (n < 1) throw std::invalid_argument("min_value_lower_bound: n must be positive");
    if (two_d < 2 || two_d % 2 != 0)
        throw std::invalid_argument("min_value_lower_bound: degree must be even and >= 2");
    if (h_tilde < 1)
        throw std::invalid_argument("min_value_lower_bound: adjusted height must be >= 1");

    auto nu = static_cast<unsigned long>(n);
    Integer exponent = Integer(n) * pow_integer(Integer(2), nu) *
                       pow_integer(Integer(two_d), nu);
    // Rounding both logs up makes the reported bound smaller, hence still a
    // valid lower bound and a depth requirement that can only grow.
    Rational scale = Rational(4) - Rational(n) / 2 +
                     log2_rational(h_tilde, Round::Up) +
                     Rational(n) * log2_rational(Rational(two_d), Round::Up);

    BoundReport report;
    report.kind = "min-value-lower-bound";
    report.value_log2 = -Rational(exponent) * scale;
    report.log2_is_authoritative = true;
    report.inputs = {{"n", std::to_string(n)},
                     {"degree", std::to_string(two_d)},
                     {"adjusted-height", to_string(h_tilde)},
                     {"exponent", exponent.get_str()}};
    return report;
}

namespace {

Integer floor_rational(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// Core of both depth computations: smallest N with ((n-1)/n)^N below the
// threshold whose log2 is (an under-approximation of) threshold_log2.
Integer depth_from_log2(int n, const Rational& threshold_log2) {
    Rational log_ratio = log2_rational(Rational(n - 1, n), Round::Up);
    if (log_ratio >= 0)
        throw std::logic_error("required_depth: ratio log rounded across zero");
    Integer depth = floor_rational(threshold_log2 / log_ratio) + 1;
    return depth < 1 ? Integer(1) : depth;
}

}  // namespace

Integer required_depth(int n, const Rational& threshold) {
    if (n < 1) throw std::invalid_argument("required_depth: n must be positive");
    if (threshold <= 0)
        throw std::domain_error("required_depth: threshold must be positive");
    if (n == 1) return 1;  // the ratio is 0, beaten by any positive threshold

    Integer depth = depth_from_log2(n, log2_rational(threshold, Round::Down));
    if (depth <= 100000) {
        // verify the strict inequality exactly and trim to the minimal depth
        Rational ratio(n - 1, n);
        Rational power = pow_rational(ratio, depth.get_ui());
        while (power >= threshold) {
            power *= ratio;
            depth += 1;
        }
        while (depth > 1) {
            Rational previous = power * Rational(n, n - 1);
            if (previous >= threshold) break;
            power = previous;
            depth -= 1;
        }
    }
    return depth;
}

Integer required_depth_log2(int n, const Rational& threshold_log2) {
    if (n < 1) throw std::invalid_argument("required_depth_log2: n must be positive");
    if (n == 1) return 1;
    return depth_from_log2(n, threshold_log2);
}

}  // namespace simplexcert
