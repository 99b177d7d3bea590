#include "simplexcert/zero_detect.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace simplexcert {

int SystemInput::max_degree() const {
    int d = 0;
    for (const Form& f : forms) d = std::max(d, f.degree());
    return d;
}

SystemInput SystemInput::from_forms(std::vector<Form> forms) {
    if (forms.empty())
        throw std::invalid_argument("system needs at least one form");
    int n = forms.front().variable_count();
    for (const Form& f : forms) {
        if (f.is_zero())
            throw std::invalid_argument("system contains a zero form");
        if (f.variable_count() != n)
            throw std::invalid_argument("system forms must share a variable count");
        for (const auto& [mono, coeff] : f.terms())
            if (!is_integer(coeff))
                throw std::invalid_argument("system forms must have integer coefficients");
    }
    return SystemInput{std::move(forms)};
}

Form sum_of_squares_form(const SystemInput& sys) {
    int n = sys.variable_count();
    int d = sys.max_degree();
    Form coordinate_sum(n, 1);
    for (int i = 0; i < n; ++i) coordinate_sum = add(coordinate_sum, Form::variable(n, i));
    Form total(n, 2 * d);
    for (const Form& f : sys.forms) {
        Form padded = multiply(power(f, 2), power(coordinate_sum, 2 * (d - f.degree())));
        total = add(total, padded);
    }
    return total;
}

BoundReport zero_detection_threshold(const SystemInput& sys) {
    int n = sys.variable_count();
    int d = sys.max_degree();
    if (d < 1)
        throw std::domain_error("zero_detection_threshold: system degree must be at least 1");
    int dd = 2 * d;
    Form big = sum_of_squares_form(sys);
    Rational height = raw_height(big);
    Rational h_tilde = adjusted_height(height, n);
    Rational l_big = normalized_height(big);

    auto ddu = static_cast<unsigned long>(dd);
    Integer prefix = Integer(dd) * factorial(ddu) *
                     binomial(static_cast<unsigned long>(n + dd - 1), ddu);
    BoundReport min_bound = min_value_lower_bound(n, dd, h_tilde);
    // Rounding the prefix log up shrinks the threshold, keeping it sound.
    Rational log_prefix = log2_rational(Rational(prefix) * l_big, Round::Up);

    BoundReport report;
    report.kind = "zero-detection-threshold";
    report.value_log2 = *min_bound.value_log2 - log_prefix;
    report.log2_is_authoritative = true;
    report.inputs = {{"n", std::to_string(n)},
                     {"degree", std::to_string(dd)},
                     {"H", to_string(height)},
                     {"adjusted-height", to_string(h_tilde)},
                     {"L_F", to_string(l_big)}};
    return report;
}

const char* to_string(ZeroVerdict v) {
    switch (v) {
        case ZeroVerdict::ZeroFound: return "ZeroFound";
        case ZeroVerdict::NoZero: return "NoZero";
        case ZeroVerdict::Undecided: return "Undecided";
    }
    throw std::logic_error("unreachable");
}

ZeroVerdict zero_verdict_from_string(const std::string& s) {
    for (ZeroVerdict v : {ZeroVerdict::ZeroFound, ZeroVerdict::NoZero,
                          ZeroVerdict::Undecided})
        if (s == to_string(v)) return v;
    throw std::invalid_argument("unknown zero verdict: '" + s + "'");
}

std::string ZeroReport::to_text() const {
    std::ostringstream out;
    out << "zero-report verdict=" << to_string(verdict)
        << " searched-depth=" << searched_depth << " budget=" << budget << "\n";
    out << "theoretical-depth=" << theoretical_depth.get_str() << "\n";
    out << "H=" << to_string(raw_height_value) << "\n";
    out << "H-tilde=" << to_string(adjusted_height_value) << "\n";
    out << "L_F=" << to_string(normalized_height_value) << "\n";
    out << "threshold-log2=" << format_fixed(threshold_log2, 6) << "\n";
    if (witness) out << "witness point=" << serialize_point(*witness) << "\n";
    out << certificate.to_text();
    return out.str();
}

namespace {

int parse_int_text(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + ": '" + text + "'");
    }
}

bool starts_with(const std::string& line, const char* prefix) {
    return line.rfind(prefix, 0) == 0;
}

}  // namespace

ZeroReport ZeroReport::from_text(const std::string& text) {
    ZeroReport report;
    bool saw_header = false, saw_verdict = false, saw_searched = false,
         saw_budget = false, saw_theoretical = false, saw_h = false,
         saw_htilde = false, saw_lf = false, saw_threshold = false;

    std::istringstream in(text);
    std::string line;
    std::string certificate_text;
    int lineno = 0;
    bool in_certificate = false;
    int certificate_start = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (in_certificate) {
            certificate_text += line;
            certificate_text += '\n';
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        if (starts_with(line, "certificate")) {
            in_certificate = true;
            certificate_start = lineno;
            certificate_text += line;
            certificate_text += '\n';
            continue;
        }
        try {
            if (starts_with(line, "zero-report ")) {
                saw_header = true;
                std::istringstream fields(line.substr(11));
                for (std::string tok; fields >> tok;) {
                    auto eq = tok.find('=');
                    if (eq == std::string::npos)
                        throw std::invalid_argument("bad header field: '" + tok + "'");
                    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                    if (key == "verdict") {
                        report.verdict = zero_verdict_from_string(val);
                        saw_verdict = true;
                    } else if (key == "searched-depth") {
                        report.searched_depth = parse_int_text(val, "searched-depth");
                        saw_searched = true;
                    } else if (key == "budget") {
                        report.budget = parse_int_text(val, "budget");
                        saw_budget = true;
                    } else {
                        throw std::invalid_argument("unknown header field: '" + key + "'");
                    }
                }
            } else if (starts_with(line, "theoretical-depth=")) {
                Rational depth = parse_rational(line.substr(18));
                if (!is_integer(depth) || depth < 0)
                    throw std::invalid_argument("bad theoretical depth: '" +
                                                line.substr(18) + "'");
                report.theoretical_depth = depth.get_num();
                saw_theoretical = true;
            } else if (starts_with(line, "H=")) {
                report.raw_height_value = parse_rational(line.substr(2));
                saw_h = true;
            } else if (starts_with(line, "H-tilde=")) {
                report.adjusted_height_value = parse_rational(line.substr(8));
                saw_htilde = true;
            } else if (starts_with(line, "L_F=")) {
                report.normalized_height_value = parse_rational(line.substr(4));
                saw_lf = true;
            } else if (starts_with(line, "threshold-log2=")) {
                report.threshold_log2 = parse_decimal(line.substr(15));
                saw_threshold = true;
            } else if (starts_with(line, "witness point=")) {
                report.witness = parse_point(line.substr(14));
            } else {
                throw std::invalid_argument("unrecognized zero-report line");
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!saw_header) throw ParseError(lineno > 0 ? lineno : 1, "missing zero-report header");
    if (!saw_verdict || !saw_searched || !saw_budget)
        throw ParseError(1, "zero-report header needs verdict, searched-depth and budget");
    if (!saw_theoretical || !saw_h || !saw_htilde || !saw_lf || !saw_threshold)
        throw ParseError(lineno > 0 ? lineno : 1, "zero-report bounds block incomplete");
    if (certificate_text.empty())
        throw ParseError(lineno > 0 ? lineno : 1, "zero-report missing embedded certificate");
    try {
        report.certificate = Certificate::from_text(certificate_text);
    } catch (const ParseError& e) {
        throw ParseError(certificate_start + e.line - 1, e.what());
    }
    if (report.verdict == ZeroVerdict::ZeroFound && !report.witness)
        throw ParseError(lineno, "ZeroFound report without witness point");
    return report;
}

namespace {

// Shared by detect_zero and replay: fills the bounds block of the report.
void fill_bounds(ZeroReport& report, const SystemInput& sys, const Form& big) {
    int n = sys.variable_count();
    report.raw_height_value = raw_height(big);
    report.adjusted_height_value = adjusted_height(report.raw_height_value, n);
    report.normalized_height_value = normalized_height(big);
    report.threshold_log2 = *zero_detection_threshold(sys).value_log2;
    report.theoretical_depth = required_depth_log2(n, report.threshold_log2);
}

bool stopped_at_zero(const Certificate& cert) {
    return cert.verdict == Verdict::Undecided && !cert.zeros.empty() &&
           cert.note == "stopped at exact zero";
}

bool fail(std::string* reason, std::string message) {
    if (reason) *reason = std::move(message);
    return false;
}

}  // namespace

ZeroReport detect_zero(const SystemInput& sys, int budget_depth, int workers) {
    if (budget_depth < 0)
        throw std::invalid_argument("detect_zero: budget must be nonnegative");
    Form big = sum_of_squares_form(sys);

    ZeroReport report;
    report.budget = budget_depth;
    fill_bounds(report, sys, big);

    SdsConfig cfg;
    cfg.goal = Goal::ProveStrictPositive;
    cfg.traversal = Traversal::BreadthFirst;
    cfg.stop_on_zero = true;
    cfg.workers = workers;
    cfg.max_depth = budget_depth;
    if (report.theoretical_depth < budget_depth)
        cfg.max_depth = static_cast<int>(report.theoretical_depth.get_si());

    report.certificate = sds_search(big, cfg);
    report.searched_depth = report.certificate.depth_used;

    switch (report.certificate.verdict) {
        case Verdict::Positive:
            report.verdict = ZeroVerdict::NoZero;
            break;
        case Verdict::Undecided:
            if (stopped_at_zero(report.certificate)) {
                report.verdict = ZeroVerdict::ZeroFound;
                report.witness = report.certificate.zeros.front().point;
            } else {
                report.verdict = ZeroVerdict::Undecided;
            }
            break;
        case Verdict::Nonnegative:
        case Verdict::NegativeWitness:
            // impossible: F is a sum of squares searched under the strict goal
            throw std::logic_error("zero search produced a sign verdict for F");
    }
    return report;
}

bool replay_zero_report(const SystemInput& sys, const ZeroReport& report,
                        std::string* reason) {
    Form big = sum_of_squares_form(sys);

    ZeroReport fresh;
    fill_bounds(fresh, sys, big);
    if (fresh.raw_height_value != report.raw_height_value)
        return fail(reason, "H mismatch: recomputed " + to_string(fresh.raw_height_value));
    if (fresh.adjusted_height_value != report.adjusted_height_value)
        return fail(reason, "H-tilde mismatch: recomputed " +
                                to_string(fresh.adjusted_height_value));
    if (fresh.normalized_height_value != report.normalized_height_value)
        return fail(reason, "L_F mismatch: recomputed " +
                                to_string(fresh.normalized_height_value));
    if (format_fixed(fresh.threshold_log2, 6) != format_fixed(report.threshold_log2, 6))
        return fail(reason, "threshold mismatch: recomputed " +
                                format_fixed(fresh.threshold_log2, 6));
    if (fresh.theoretical_depth != report.theoretical_depth)
        return fail(reason, "theoretical depth mismatch: recomputed " +
                                fresh.theoretical_depth.get_str());

    std::string cert_reason;
    if (!replay_certificate(big, report.certificate, &cert_reason))
        return fail(reason, "certificate replay failed: " + cert_reason);
    if (report.searched_depth != report.certificate.depth_used)
        return fail(reason, "searched-depth disagrees with the certificate");
    if (report.budget < 0 || report.searched_depth > std::max(report.budget, 0))
        return fail(reason, "searched-depth exceeds the budget");

    switch (report.verdict) {
        case ZeroVerdict::ZeroFound: {
            if (!report.witness) return fail(reason, "ZeroFound without witness");
            const RationalPoint& w = *report.witness;
            if (w.size() != sys.variable_count())
                throw std::invalid_argument("witness point arity mismatch");
            if (!w.on_simplex())
                return fail(reason, "witness point is not on the simplex");
            for (std::size_t i = 0; i < sys.forms.size(); ++i)
                if (sign(sys.forms[i].evaluate(w)) != 0)
                    return fail(reason, "witness is not a zero of form " +
                                            std::to_string(i + 1));
            if (!stopped_at_zero(report.certificate) ||
                !(report.certificate.zeros.front().point == w))
                return fail(reason, "witness does not match the certificate's zero record");
            break;
        }
        case ZeroVerdict::NoZero:
            if (report.witness) return fail(reason, "NoZero report carries a witness");
            if (report.certificate.verdict != Verdict::Positive)
                return fail(reason, "NoZero requires an all-positive frontier certificate");
            break;
        case ZeroVerdict::Undecided:
            if (report.witness) return fail(reason, "Undecided report carries a witness");
            if (report.certificate.verdict != Verdict::Undecided ||
                stopped_at_zero(report.certificate))
                return fail(reason, "Undecided verdict disagrees with the certificate");
            break;
    }
    return true;
}

}  // namespace simplexcert
