#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simplexcert/bounds.hpp"
#include "simplexcert/expansion.hpp"
#include "simplexcert/form.hpp"
#include "simplexcert/samples.hpp"
#include "simplexcert/sds.hpp"
#include "simplexcert/simplex.hpp"
#include "simplexcert/zero_detect.hpp"

namespace sc = simplexcert;

namespace {

// Fatal command failure with a chosen process exit code. 64 = input parse
// error, 65 = input violates an engine precondition, 66 = unreadable file.
struct CommandError : std::runtime_error {
    int code;
    CommandError(int code_, const std::string& what_)
        : std::runtime_error(what_), code(code_) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CommandError(66, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_report(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CommandError(66, "cannot write '" + out_path + "'");
    out << text;
}

sc::Form load_form(const std::string& path) {
    try {
        return sc::parse_form(read_file(path));
    } catch (const sc::ParseError& e) {
        throw CommandError(64, path + ": " + e.what());
    }
}

sc::SystemInput load_system(const std::string& path) {
    try {
        return sc::SystemInput::from_forms(sc::parse_system(read_file(path)));
    } catch (const sc::ParseError& e) {
        throw CommandError(64, path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw CommandError(64, path + ": " + e.what());
    }
}

// Optional --matrix/--word transform shared by expand and classify.
sc::SimplexMatrix load_transform(const std::string& matrix_path,
                                 const std::string& word_text, int n) {
    if (!matrix_path.empty()) {
        std::string text = read_file(matrix_path);
        try {
            return sc::parse_matrix(text);
        } catch (const sc::ParseError& e) {
            throw CommandError(64, matrix_path + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw CommandError(65, matrix_path + ": " + e.what());
        }
    }
    if (!word_text.empty()) {
        try {
            return sc::product_chain(sc::parse_word(word_text, n), n);
        } catch (const std::invalid_argument& e) {
            throw CommandError(64, std::string("bad word: ") + e.what());
        }
    }
    return sc::SimplexMatrix::identity(n);
}

// SIMPLEXCERT_WORKERS caps (never raises) the requested worker count.
int capped_workers(int requested) {
    const char* env = std::getenv("SIMPLEXCERT_WORKERS");
    if (!env) return requested;
    try {
        std::size_t used = 0;
        int cap = std::stoi(env, &used);
        if (used == std::string(env).size() && cap >= 1 && cap < requested)
            return cap;
    } catch (const std::exception&) {
        // unusable cap: keep the requested count
    }
    return requested;
}

sc::Goal goal_from_flag(const std::string& s) {
    if (s == "strict") return sc::Goal::ProveStrictPositive;
    if (s == "nonneg") return sc::Goal::ProveNonnegative;
    return sc::Goal::Decide;
}

void append_log2(sc::BoundReport& report) {
    if (report.value_exact && *report.value_exact > 0)
        report.value_log2 = sc::log2_rational(*report.value_exact, sc::Round::Nearest);
}

int run_bound(const std::string& kind, const std::string& input,
              const std::string& point_text, const std::string& min_bound_text,
              const std::string& out_path) {
    sc::BoundReport report;
    if (kind == "zero-threshold") {
        sc::SystemInput sys = load_system(input);
        report = sc::zero_detection_threshold(sys);
        report.inputs.emplace_back(
            "required-depth",
            sc::required_depth_log2(sys.variable_count(), *report.value_log2).get_str());
        write_report(out_path, report.to_text());
        return 0;
    }

    sc::Form f = load_form(input);
    int n = f.variable_count();
    if (kind == "normalized-height" || kind == "raw-height" ||
        kind == "derivative-bound") {
        report.kind = kind;
        report.value_exact = kind == "normalized-height"  ? sc::normalized_height(f)
                             : kind == "raw-height"       ? sc::raw_height(f)
                                                          : sc::derivative_bound(f);
        append_log2(report);
        report.inputs = {{"n", std::to_string(n)},
                         {"d", std::to_string(f.degree())}};
    } else if (kind == "sign-threshold") {
        if (point_text.empty())
            throw CommandError(64, "--point is required for kind sign-threshold");
        report = sc::expansion_sign_threshold(f, sc::parse_point(point_text));
        if (*report.value_exact > 0)
            report.inputs.emplace_back(
                "required-depth", sc::required_depth(n, *report.value_exact).get_str());
    } else if (kind == "sign-threshold-from-min") {
        if (min_bound_text.empty())
            throw CommandError(64, "--min-bound is required for kind sign-threshold-from-min");
        report = sc::expansion_sign_threshold_from_min(
            f, sc::parse_rational(min_bound_text));
        report.inputs.emplace_back(
            "required-depth", sc::required_depth(n, *report.value_exact).get_str());
    } else {  // min-value
        report = sc::min_value_lower_bound(
            n, f.degree(), sc::adjusted_height(sc::raw_height(f), n));
        report.inputs.emplace_back(
            "required-depth", sc::required_depth_log2(n, *report.value_log2).get_str());
    }
    write_report(out_path, report.to_text());
    return 0;
}

int verdict_exit_code(sc::Verdict v) {
    switch (v) {
        case sc::Verdict::Positive:
        case sc::Verdict::Nonnegative: return 0;
        case sc::Verdict::NegativeWitness: return 1;
        case sc::Verdict::Undecided: return 2;
    }
    return 2;
}

int zero_verdict_exit_code(sc::ZeroVerdict v) {
    switch (v) {
        case sc::ZeroVerdict::ZeroFound: return 0;
        case sc::ZeroVerdict::NoZero: return 1;
        case sc::ZeroVerdict::Undecided: return 2;
    }
    return 2;
}

int run_replay(const std::string& input, const std::string& cert_path,
               const std::string& out_path) {
    std::string cert_text = read_file(cert_path);
    std::size_t first = cert_text.find_first_not_of(" \t\r\n");
    bool is_zero_report =
        first != std::string::npos && cert_text.compare(first, 11, "zero-report") == 0;
    bool ok = false;
    std::string reason;
    try {
        if (is_zero_report) {
            sc::ZeroReport report = sc::ZeroReport::from_text(cert_text);
            ok = sc::replay_zero_report(load_system(input), report, &reason);
        } else {
            sc::Certificate cert = sc::Certificate::from_text(cert_text);
            ok = sc::replay_certificate(load_form(input), cert, &reason);
        }
    } catch (const sc::ParseError& e) {
        throw CommandError(64, cert_path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw CommandError(65, cert_path + ": " + e.what());
    }
    write_report(out_path, ok ? "valid\n" : "invalid: " + reason + "\n");
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Built-in golden suite
// ---------------------------------------------------------------------------

sc::Form make_form(int n, int d, const std::vector<std::pair<std::vector<int>, int>>& terms) {
    std::vector<std::pair<sc::Monomial, sc::Rational>> built;
    built.reserve(terms.size());
    for (const auto& [exps, c] : terms) built.emplace_back(sc::Monomial(exps), sc::Rational(c));
    return sc::Form::from_terms(n, d, built);
}

// All exponent vectors over n variables with total degree at most d.
void enumerate_multi_indices(int n, int d, std::vector<int>& current,
                             std::vector<sc::Monomial>& out) {
    if (static_cast<int>(current.size()) == n - 1) {
        for (int last = 0; last <= d; ++last) {
            current.push_back(last);
            out.emplace_back(current);
            current.pop_back();
        }
        return;
    }
    for (int e = 0; e <= d; ++e) {
        current.push_back(e);
        enumerate_multi_indices(n, d - e, current, out);
        current.pop_back();
    }
}

bool derivative_bound_holds(const sc::Form& f, const std::vector<sc::RationalPoint>& points) {
    sc::Rational bound = sc::derivative_bound(f);
    std::vector<sc::Monomial> alphas;
    std::vector<int> scratch;
    enumerate_multi_indices(f.variable_count(), f.degree(), scratch, alphas);
    for (const sc::Monomial& alpha : alphas) {
        sc::Form df = sc::derivative(f, alpha);
        for (const sc::RationalPoint& p : points)
            if (sc::abs(df.evaluate(p)) > bound) return false;
    }
    return true;
}

int run_self_test(const std::string& out_path) {
    std::ostringstream out;
    int failures = 0;
    auto item = [&](const char* name, bool ok, const std::string& detail = "") {
        if (ok) {
            out << "pass " << name << "\n";
        } else {
            out << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
            ++failures;
        }
    };

    // Golden 1: the degree-20 ternary form.
    sc::Form ternary = sc::samples::ternary_deg20();
    bool vertex_zeros = true;
    for (int i = 0; i < 3; ++i)
        vertex_zeros = vertex_zeros &&
                       sc::sign(ternary.evaluate(sc::RationalPoint::unit(3, i))) == 0;
    item("ternary-deg20-vertex-zeros", vertex_zeros);
    item("ternary-deg20-mixed-signs",
         sc::sign_classify(ternary) == sc::SignClass::Mixed);
    bool depth1_nonneg = true;
    for (const sc::Permutation& sigma : sc::all_permutations(3))
        depth1_nonneg = depth1_nonneg &&
                        sc::sign_classify(sc::expand(ternary, sc::barycentric_matrix(sigma))) ==
                            sc::SignClass::AllNonnegative;
    item("ternary-deg20-depth1-nonnegative", depth1_nonneg);
    sc::SdsConfig ternary_cfg;
    ternary_cfg.goal = sc::Goal::ProveNonnegative;
    ternary_cfg.max_depth = 1;
    sc::Certificate ternary_cert = sc::sds_search(ternary, ternary_cfg);
    std::string why;
    item("ternary-deg20-certificate",
         ternary_cert.verdict == sc::Verdict::Nonnegative &&
             ternary_cert.leaves.size() == 6 &&
             sc::replay_certificate(ternary, ternary_cert, &why),
         why);

    // Golden 2: bound spot values.
    sc::Form two_x_plus_y = make_form(2, 1, {{{1, 0}, 2}, {{0, 1}, 1}});
    sc::Form sum_sq = make_form(2, 2, {{{2, 0}, 1}, {{0, 2}, 1}});
    sc::RationalPoint half{{sc::Rational(1, 2), sc::Rational(1, 2)}};
    item("bound-normalized-height",
         sc::normalized_height(two_x_plus_y) == 2 && sc::normalized_height(sum_sq) == 1);
    item("bound-sign-threshold",
         *sc::expansion_sign_threshold(two_x_plus_y, half).value_exact == sc::Rational(3, 8) &&
             *sc::expansion_sign_threshold(sum_sq, half).value_exact == sc::Rational(1, 24));
    item("bound-required-depth",
         sc::required_depth(2, sc::Rational(3, 8)) == 2 &&
             sc::required_depth(2, sc::Rational(1)) == 1);

    // Golden 3: derivative bound on fixed samples.
    std::vector<sc::RationalPoint> points = {
        half,
        sc::RationalPoint{{sc::Rational(1, 3), sc::Rational(2, 3)}},
        sc::RationalPoint{{sc::Rational(1), sc::Rational(0)}},
    };
    bool deriv_ok = derivative_bound_holds(two_x_plus_y, points) &&
                    derivative_bound_holds(sum_sq, points) &&
                    derivative_bound_holds(
                        make_form(2, 3, {{{3, 0}, 1}, {{1, 2}, -4}, {{0, 3}, 2}}), points);
    item("derivative-bound-samples", deriv_ok);

    // Golden 4: desk-scale zero detection.
    sc::SystemInput diff = sc::SystemInput::from_forms(
        {make_form(2, 1, {{{1, 0}, 1}, {{0, 1}, -1}})});
    sc::SystemInput sum = sc::SystemInput::from_forms(
        {make_form(2, 1, {{{1, 0}, 1}, {{0, 1}, 1}})});
    sc::ZeroReport diff_report = sc::detect_zero(diff, 6);
    sc::ZeroReport sum_report = sc::detect_zero(sum, 6);
    item("zero-detect-found",
         diff_report.verdict == sc::ZeroVerdict::ZeroFound && diff_report.witness &&
             *diff_report.witness ==
                 sc::RationalPoint{{sc::Rational(1, 2), sc::Rational(1, 2)}});
    item("zero-detect-nozero", sum_report.verdict == sc::ZeroVerdict::NoZero);
    item("zero-threshold-value",
         sc::format_fixed(diff_report.threshold_log2, 6) == "-269.886662" &&
             diff_report.theoretical_depth == 270);

    out << (failures == 0 ? "self-test: all passed\n"
                          : "self-test: " + std::to_string(failures) + " item(s) failed\n");
    write_report(out_path, out.str());
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "simplexcert: exact sign certificates and zero detection for homogeneous "
        "forms on the standard simplex"};
    app.require_subcommand(1);

    std::string input, matrix_path, word_text, out_path, cert_path;
    std::string kind, point_text, min_bound_text;
    std::string goal_flag = "strict", traversal_flag = "breadth-first";
    int max_depth = 6, budget = 6, workers = 1;
    std::size_t node_cap = 200000;

    CLI::App* cmd_expand =
        app.add_subcommand("expand", "Expand a form over a sub-simplex and print it");
    cmd_expand->add_option("-i,--input", input, "form file")->required();
    CLI::Option* opt_matrix =
        cmd_expand->add_option("-m,--matrix", matrix_path, "matrix file: n rows of n rationals");
    cmd_expand->add_option("-w,--word", word_text, "barycentric word, e.g. '1 3 2,2 1 3'")
        ->excludes(opt_matrix);
    cmd_expand->add_option("-o,--output", out_path, "write the report to this file");

    CLI::App* cmd_classify = app.add_subcommand(
        "classify", "Print the coefficient sign class of a form (after optional expansion)");
    cmd_classify->add_option("-i,--input", input, "form file")->required();
    CLI::Option* opt_matrix2 =
        cmd_classify->add_option("-m,--matrix", matrix_path, "matrix file");
    cmd_classify->add_option("-w,--word", word_text, "barycentric word")->excludes(opt_matrix2);
    cmd_classify->add_option("-o,--output", out_path, "write the report to this file");

    CLI::App* cmd_bound = app.add_subcommand("bound", "Compute one of the explicit bounds");
    cmd_bound->add_option("-i,--input", input, "form file (system file for zero-threshold)")
        ->required();
    cmd_bound
        ->add_option("-k,--kind", kind,
                     "normalized-height | raw-height | derivative-bound | sign-threshold | "
                     "sign-threshold-from-min | min-value | zero-threshold")
        ->required()
        ->check(CLI::IsMember({"normalized-height", "raw-height", "derivative-bound",
                               "sign-threshold", "sign-threshold-from-min", "min-value",
                               "zero-threshold"}));
    cmd_bound->add_option("-p,--point", point_text, "simplex point, e.g. '1/2,1/2'");
    cmd_bound->add_option("--min-bound", min_bound_text,
                          "positive lower bound on |f| over the simplex");
    cmd_bound->add_option("-o,--output", out_path, "write the report to this file");

    CLI::App* cmd_prove = app.add_subcommand(
        "prove", "Search for a sign certificate (exit 0 proved, 1 witness, 2 undecided)");
    cmd_prove->add_option("-i,--input", input, "form file")->required();
    cmd_prove->add_option("-g,--goal", goal_flag, "strict | nonneg | decide")
        ->check(CLI::IsMember({"strict", "nonneg", "decide"}));
    cmd_prove->add_option("-d,--max-depth", max_depth, "subdivision depth budget")
        ->check(CLI::NonNegativeNumber);
    cmd_prove->add_option("-t,--traversal", traversal_flag, "breadth-first | depth-first")
        ->check(CLI::IsMember({"breadth-first", "depth-first"}));
    cmd_prove->add_option("--node-cap", node_cap, "abort when a level would exceed this");
    cmd_prove->add_option("-j,--workers", workers, "worker threads (breadth-first only)")
        ->check(CLI::PositiveNumber);
    cmd_prove->add_option("-o,--output", out_path, "write the certificate to this file");

    CLI::App* cmd_zero = app.add_subcommand(
        "find-zero", "Decide simplex zeros of a system (exit 0 found, 1 none, 2 undecided)");
    cmd_zero->add_option("-i,--input", input, "system file ('---' separated forms)")
        ->required();
    cmd_zero->add_option("-b,--budget", budget, "subdivision depth budget")
        ->check(CLI::NonNegativeNumber);
    cmd_zero->add_option("-j,--workers", workers, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd_zero->add_option("-o,--output", out_path, "write the report to this file");

    CLI::App* cmd_replay = app.add_subcommand(
        "replay", "Re-verify a certificate or zero report against its input (exit 0 valid)");
    cmd_replay->add_option("-i,--input", input, "form file (system file for zero reports)")
        ->required();
    cmd_replay->add_option("-c,--certificate", cert_path, "certificate or zero-report file")
        ->required();
    cmd_replay->add_option("-o,--output", out_path, "write the verification result here");

    CLI::App* cmd_selftest =
        app.add_subcommand("self-test", "Run the built-in golden suite (exit 0 on success)");
    cmd_selftest->add_option("-o,--output", out_path, "write the report to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_expand) {
            sc::Form f = load_form(input);
            sc::SimplexMatrix m = load_transform(matrix_path, word_text, f.variable_count());
            write_report(out_path, sc::serialize_form(sc::expand(f, m)));
            return 0;
        }
        if (*cmd_classify) {
            sc::Form f = load_form(input);
            sc::SimplexMatrix m = load_transform(matrix_path, word_text, f.variable_count());
            write_report(out_path,
                         std::string(sc::to_string(sc::sign_classify(sc::expand(f, m)))) + "\n");
            return 0;
        }
        if (*cmd_bound) return run_bound(kind, input, point_text, min_bound_text, out_path);
        if (*cmd_prove) {
            sc::Form f = load_form(input);
            sc::SdsConfig cfg;
            cfg.goal = goal_from_flag(goal_flag);
            cfg.max_depth = max_depth;
            cfg.traversal = sc::traversal_from_string(traversal_flag);
            cfg.node_cap = node_cap;
            cfg.workers = capped_workers(workers);
            sc::Certificate cert = sc::sds_search(f, cfg);
            write_report(out_path, cert.to_text());
            return verdict_exit_code(cert.verdict);
        }
        if (*cmd_zero) {
            sc::SystemInput sys = load_system(input);
            sc::ZeroReport report = sc::detect_zero(sys, budget, capped_workers(workers));
            write_report(out_path, report.to_text());
            return zero_verdict_exit_code(report.verdict);
        }
        if (*cmd_replay) return run_replay(input, cert_path, out_path);
        if (*cmd_selftest) return run_self_test(out_path);
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 65;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
    return 0;
}
