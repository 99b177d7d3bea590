#include "simplexcert/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <stdexcept>

namespace simplexcert {

int sign(const Rational& x) { return sgn(x); }

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

bool is_integer(const Rational& x) {
    return mpz_cmp_ui(x.get_den().get_mpz_t(), 1) == 0;
}

Rational pow_rational(const Rational& base, unsigned long exp) {
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), exp);
    return r;  // base canonical => powers share no factor
}

Integer pow_integer(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Integer factorial(unsigned long k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace {

bool valid_integer_token(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& token) {
    // base 10 everywhere: gmp's default base 0 would read a leading zero as
    // an octal prefix
    auto slash = token.find('/');
    if (slash == std::string::npos) {
        if (!valid_integer_token(token))
            throw std::invalid_argument("bad rational: '" + token + "'");
        return Rational(mpz_class(token, 10));
    }
    std::string num = token.substr(0, slash);
    std::string den = token.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw std::invalid_argument("bad rational: '" + token + "'");
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + token + "'");
    Rational r(mpz_class(num, 10), d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) {
    if (is_integer(x)) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_decimal(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return parse_rational(text);
    std::string head = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) head = head.substr(1);
    if (head.empty()) head = "0";
    auto digits_only = [](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    if (!digits_only(head) || !digits_only(frac))
        throw std::invalid_argument("bad decimal: '" + text + "'");
    Rational fraction(Integer(frac, 10), pow_integer(Integer(10), frac.size()));
    fraction.canonicalize();
    Rational value = Rational(Integer(head, 10)) + fraction;
    return negative ? Rational(-value) : value;
}

Rational log2_rational(const Rational& x, Round dir) {
    if (sgn(x) <= 0) throw std::domain_error("log2 of nonpositive value");
    mpfr_rnd_t rnd = dir == Round::Down ? MPFR_RNDD
                     : dir == Round::Up ? MPFR_RNDU
                                        : MPFR_RNDN;
    // A 192-bit mantissa keeps both directed roundings far inside the 2^-20
    // contract even when log2(x) needs many integer bits. Rounding the input
    // and the log in the same direction preserves the directed guarantee.
    mpfr_t t;
    mpfr_init2(t, 192);
    mpfr_set_q(t, x.get_mpq_t(), rnd);
    mpfr_log2(t, t, rnd);
    Rational out;
    mpfr_get_q(out.get_mpq_t(), t);
    mpfr_clear(t);
    return out;
}

std::string format_fixed(const Rational& x, int decimals) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
    Rational scaled = x * Rational(scale);
    Integer units;
    mpz_fdiv_q(units.get_mpz_t(), scaled.get_num().get_mpz_t(),
               scaled.get_den().get_mpz_t());
    bool negative = units < 0;
    if (negative) units = -units;
    Integer whole = units / scale;
    Integer frac = units % scale;
    std::string fs = frac.get_str();
    std::string out = negative ? "-" : "";
    out += whole.get_str();
    if (decimals > 0) {
        out += '.';
        out += std::string(static_cast<std::size_t>(decimals) - fs.size(), '0');
        out += fs;
    }
    return out;
}

}  // namespace simplexcert
