#include "simplexcert/form.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace simplexcert {

namespace {

void check_dimension(int n) {
    if (n < 1) throw std::invalid_argument("variable count must be >= 1");
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
    if (exps_.empty()) throw std::invalid_argument("empty exponent vector");
    for (int e : exps_)
        if (e < 0) throw std::invalid_argument("negative exponent");
}

int Monomial::degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), 0);
}

bool Monomial::operator<(const Monomial& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(o.exps_.begin(), o.exps_.end(),
                                        exps_.begin(), exps_.end());
}

RationalPoint RationalPoint::unit(int n, int i) {
    check_dimension(n);
    if (i < 0 || i >= n) throw std::out_of_range("unit vector index");
    std::vector<Rational> c(static_cast<std::size_t>(n), Rational(0));
    c[static_cast<std::size_t>(i)] = 1;
    return RationalPoint(std::move(c));
}

Rational RationalPoint::coordinate_sum() const {
    Rational s(0);
    for (const auto& c : coords) s += c;
    return s;
}

bool RationalPoint::on_simplex() const {
    if (coords.empty()) return false;
    for (const auto& c : coords)
        if (c < 0) return false;
    return coordinate_sum() == 1;
}

Form::Form(int variable_count, int degree) : n_(variable_count), d_(degree) {
    check_dimension(n_);
    if (d_ < 0) throw std::invalid_argument("degree must be >= 0");
}

Form Form::constant(int variable_count, const Rational& value) {
    Form f(variable_count, 0);
    if (value != 0)
        f.terms_.emplace(Monomial(std::vector<int>(static_cast<std::size_t>(variable_count), 0)),
                         value);
    return f;
}

Form Form::variable(int variable_count, int index) {
    check_dimension(variable_count);
    if (index < 0 || index >= variable_count)
        throw std::out_of_range("variable index");
    std::vector<int> e(static_cast<std::size_t>(variable_count), 0);
    e[static_cast<std::size_t>(index)] = 1;
    Form f(variable_count, 1);
    f.terms_.emplace(Monomial(std::move(e)), Rational(1));
    return f;
}

Form Form::from_terms(int variable_count, int degree,
                      const std::vector<std::pair<Monomial, Rational>>& terms) {
    Form f(variable_count, degree);
    for (const auto& [mono, coeff] : terms) {
        if (mono.size() != variable_count)
            throw std::invalid_argument("exponent count mismatch");
        if (mono.degree() != degree)
            throw std::invalid_argument("inhomogeneous term");
        auto [it, inserted] = f.terms_.emplace(mono, coeff);
        if (!inserted) it->second += coeff;
        if (it->second == 0) f.terms_.erase(it);
    }
    return f;
}

bool Form::operator==(const Form& o) const {
    return n_ == o.n_ && d_ == o.d_ && terms_ == o.terms_;
}

Form Form::operator-() const {
    Form g(n_, d_);
    for (const auto& [mono, coeff] : terms_) g.terms_.emplace(mono, -coeff);
    return g;
}

Rational Form::evaluate(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("evaluation point dimension mismatch");
    Rational total(0);
    for (const auto& [mono, coeff] : terms_) {
        Rational term = coeff;
        for (int i = 0; i < n_; ++i) {
            int e = mono[i];
            if (e > 0) term *= pow_rational(x[static_cast<std::size_t>(i)],
                                            static_cast<unsigned long>(e));
        }
        total += term;
    }
    return total;
}

Form add(const Form& f, const Form& g) {
    if (f.variable_count() != g.variable_count())
        throw std::invalid_argument("add: variable count mismatch");
    if (f.degree() != g.degree())
        throw std::invalid_argument("add: degree mismatch");
    std::vector<std::pair<Monomial, Rational>> terms;
    terms.reserve(f.term_count() + g.term_count());
    for (const auto& t : f.terms()) terms.push_back(t);
    for (const auto& t : g.terms()) terms.push_back(t);
    return Form::from_terms(f.variable_count(), f.degree(), terms);
}

Form multiply(const Form& f, const Form& g) {
    if (f.variable_count() != g.variable_count())
        throw std::invalid_argument("multiply: variable count mismatch");
    int n = f.variable_count();
    int d = f.degree() + g.degree();
    std::vector<std::pair<Monomial, Rational>> terms;
    terms.reserve(f.term_count() * g.term_count());
    for (const auto& [ma, ca] : f.terms()) {
        for (const auto& [mb, cb] : g.terms()) {
            std::vector<int> e(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = ma[i] + mb[i];
            terms.emplace_back(Monomial(std::move(e)), ca * cb);
        }
    }
    return Form::from_terms(n, d, terms);
}

Form multiply(const Rational& c, const Form& f) {
    if (c == 0) return Form(f.variable_count(), f.degree());
    std::vector<std::pair<Monomial, Rational>> terms;
    terms.reserve(f.term_count());
    for (const auto& [mono, coeff] : f.terms()) terms.emplace_back(mono, c * coeff);
    return Form::from_terms(f.variable_count(), f.degree(), terms);
}

Form power(const Form& f, int k) {
    if (k < 0) throw std::invalid_argument("power: negative exponent");
    Form result = Form::constant(f.variable_count(), 1);
    Form base = f;
    int e = k;
    while (e > 0) {
        if (e & 1) result = multiply(result, base);
        e >>= 1;
        if (e > 0) base = multiply(base, base);
    }
    return result;
}

Form derivative(const Form& f, const Monomial& alpha) {
    if (alpha.size() != f.variable_count())
        throw std::invalid_argument("derivative: exponent count mismatch");
    int k = alpha.degree();
    if (k > f.degree()) return Form(f.variable_count(), 0);
    int n = f.variable_count();
    std::vector<std::pair<Monomial, Rational>> terms;
    for (const auto& [mono, coeff] : f.terms()) {
        Rational c = coeff;
        std::vector<int> e(static_cast<std::size_t>(n));
        bool vanishes = false;
        for (int i = 0; i < n && !vanishes; ++i) {
            int b = mono[i], a = alpha[i];
            if (b < a) {
                vanishes = true;
                break;
            }
            // falling factorial b * (b-1) * ... * (b-a+1)
            for (int j = 0; j < a; ++j) c *= b - j;
            e[static_cast<std::size_t>(i)] = b - a;
        }
        if (!vanishes) terms.emplace_back(Monomial(std::move(e)), c);
    }
    return Form::from_terms(n, f.degree() - k, terms);
}

namespace {

struct LineReader {
    std::istringstream stream;
    int line_number = 0;
    explicit LineReader(const std::string& text) : stream(text) {}
    bool next(std::string& line) {
        if (!std::getline(stream, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_number;
        return true;
    }
};

bool is_comment_or_blank(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;  // blank
}

bool is_separator(const std::string& line) {
    return split_tokens(line) == std::vector<std::string>{"---"};
}

int parse_small_int(const std::string& tok, int line, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, std::string("bad ") + what + ": '" + tok + "'");
    }
}

// Parses one form block; stops at end of input or a "---" line (consumed).
// Returns false when the input is exhausted before any content.
bool parse_block(LineReader& reader, Form& out, bool& saw_separator) {
    saw_separator = false;
    std::string line;
    int n = -1, d = -1;
    std::vector<std::pair<Monomial, Rational>> terms;
    bool have_header = false;
    while (reader.next(line)) {
        if (is_comment_or_blank(line)) continue;
        if (is_separator(line)) {
            if (!have_header) throw ParseError(reader.line_number, "empty form block");
            saw_separator = true;
            break;
        }
        auto toks = split_tokens(line);
        if (!have_header) {
            if (toks.size() != 2)
                throw ParseError(reader.line_number, "expected header 'n d'");
            n = parse_small_int(toks[0], reader.line_number, "variable count");
            d = parse_small_int(toks[1], reader.line_number, "degree");
            if (n < 1) throw ParseError(reader.line_number, "variable count must be >= 1");
            if (d < 0) throw ParseError(reader.line_number, "degree must be >= 0");
            have_header = true;
            continue;
        }
        if (static_cast<int>(toks.size()) != n + 1)
            throw ParseError(reader.line_number,
                             "expected 1 coefficient and " + std::to_string(n) +
                                 " exponents, got " + std::to_string(toks.size()) +
                                 " tokens");
        Rational coeff;
        try {
            coeff = parse_rational(toks[0]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(reader.line_number, e.what());
        }
        std::vector<int> exps(static_cast<std::size_t>(n));
        int total = 0;
        for (int i = 0; i < n; ++i) {
            int e = parse_small_int(toks[static_cast<std::size_t>(i) + 1],
                                    reader.line_number, "exponent");
            if (e < 0) throw ParseError(reader.line_number, "negative exponent");
            exps[static_cast<std::size_t>(i)] = e;
            total += e;
        }
        if (total != d)
            throw ParseError(reader.line_number,
                             "inhomogeneous term: exponents sum to " +
                                 std::to_string(total) + ", expected " +
                                 std::to_string(d));
        terms.emplace_back(Monomial(std::move(exps)), coeff);
    }
    if (!have_header) return false;
    out = Form::from_terms(n, d, terms);
    return true;
}

}  // namespace

Form parse_form(const std::string& text) {
    LineReader reader(text);
    Form f(1, 0);
    bool saw_separator = false;
    if (!parse_block(reader, f, saw_separator))
        throw ParseError(reader.line_number > 0 ? reader.line_number : 1,
                         "missing 'n d' header");
    if (saw_separator)
        throw ParseError(reader.line_number, "unexpected '---' in single-form input");
    return f;
}

std::vector<Form> parse_system(const std::string& text) {
    LineReader reader(text);
    std::vector<Form> forms;
    for (;;) {
        Form f(1, 0);
        bool saw_separator = false;
        bool got = parse_block(reader, f, saw_separator);
        if (got) forms.push_back(std::move(f));
        if (!got && !forms.empty() && !saw_separator) break;
        if (!got && forms.empty())
            throw ParseError(reader.line_number > 0 ? reader.line_number : 1,
                         "missing 'n d' header");
        if (!saw_separator) break;
    }
    return forms;
}

std::string serialize_form(const Form& f) {
    std::ostringstream os;
    os << f.variable_count() << ' ' << f.degree() << '\n';
    for (const auto& [mono, coeff] : f.terms()) {
        os << to_string(coeff);
        for (int i = 0; i < mono.size(); ++i) os << ' ' << mono[i];
        os << '\n';
    }
    return os.str();
}

std::string serialize_system(const std::vector<Form>& forms) {
    std::string out;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (i > 0) out += "---\n";
        out += serialize_form(forms[i]);
    }
    return out;
}

std::string serialize_point(const RationalPoint& p) {
    std::string out;
    for (int i = 0; i < p.size(); ++i) {
        if (i > 0) out += ',';
        out += to_string(p.coords[static_cast<std::size_t>(i)]);
    }
    return out;
}

RationalPoint parse_point(const std::string& text) {
    std::vector<Rational> coords;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::size_t end = comma == std::string::npos ? text.size() : comma;
        coords.push_back(parse_rational(text.substr(start, end - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return RationalPoint(std::move(coords));
}

}  // namespace simplexcert
