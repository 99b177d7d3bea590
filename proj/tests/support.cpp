#include "support.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testsupport {

using namespace simplexcert;

namespace {

int coefficient_draw(Rng& rng) {
    std::uniform_int_distribution<int> dist(-9, 9);
    int c = 0;
    while (c == 0) c = dist(rng);
    return c;
}

void exact_degree_indices(int n, int d, std::vector<int>& current,
                          std::vector<Monomial>& out) {
    if (static_cast<int>(current.size()) == n - 1) {
        current.push_back(d);
        out.emplace_back(current);
        current.pop_back();
        return;
    }
    for (int e = 0; e <= d; ++e) {
        current.push_back(e);
        exact_degree_indices(n, d - e, current, out);
        current.pop_back();
    }
}

std::vector<Monomial> exact_degree_monomials(int n, int d) {
    std::vector<Monomial> out;
    std::vector<int> scratch;
    exact_degree_indices(n, d, scratch, out);
    return out;
}

}  // namespace

Form random_form(Rng& rng, int n, int d) {
    std::vector<Monomial> slots = exact_degree_monomials(n, d);
    std::vector<std::pair<Monomial, Rational>> terms;
    for (const Monomial& mono : slots)
        if (rng() & 1) terms.emplace_back(mono, Rational(coefficient_draw(rng)));
    if (terms.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
        terms.emplace_back(slots[pick(rng)], Rational(coefficient_draw(rng)));
    }
    return Form::from_terms(n, d, terms);
}

RationalPoint random_simplex_point(Rng& rng, int n) {
    std::uniform_int_distribution<int> dist(0, 9);
    std::vector<int> weights(n);
    int total = 0;
    while (total == 0) {
        total = 0;
        for (int& w : weights) total += (w = dist(rng));
    }
    RationalPoint p;
    p.coords.reserve(n);
    for (int w : weights) p.coords.push_back(Rational(w) / Rational(total));
    return p;
}

RationalPoint random_interior_point(Rng& rng, int n) {
    std::uniform_int_distribution<int> dist(1, 9);
    std::vector<int> weights(n);
    int total = 0;
    for (int& w : weights) total += (w = dist(rng));
    RationalPoint p;
    p.coords.reserve(n);
    for (int w : weights) p.coords.push_back(Rational(w) / Rational(total));
    return p;
}

SimplexMatrix random_simplex_matrix(Rng& rng, int n) {
    for (;;) {
        std::vector<RationalPoint> columns;
        columns.reserve(n);
        for (int j = 0; j < n; ++j) columns.push_back(random_interior_point(rng, n));
        std::vector<Rational> entries;
        entries.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) entries.push_back(columns[j].coords[i]);
        try {
            return SimplexMatrix(n, std::move(entries));
        } catch (const std::invalid_argument&) {
            // singular draw: try again
        }
    }
}

RationalPoint apply_matrix(const SimplexMatrix& m, const RationalPoint& x) {
    RationalPoint y;
    y.coords.assign(m.dim(), Rational(0));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) y.coords[i] += m.at(i, j) * x.coords[j];
    return y;
}

std::vector<Monomial> multi_indices_up_to(int n, int d) {
    std::vector<Monomial> out;
    for (int total = 0; total <= d; ++total) {
        std::vector<Monomial> level = exact_degree_monomials(n, total);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

Form expand_by_composition(const Form& f, const SimplexMatrix& m) {
    int n = f.variable_count();
    std::vector<Form> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) {
        Form linear(n, 1);
        for (int j = 0; j < n; ++j)
            linear = add(linear, multiply(m.at(i, j), Form::variable(n, j)));
        rows.push_back(linear);
    }
    Form acc(n, f.degree());
    for (const auto& [mono, coeff] : f.terms()) {
        Form term = Form::constant(n, coeff);
        for (int i = 0; i < n; ++i)
            if (mono[i] > 0) term = multiply(term, power(rows[i], mono[i]));
        acc = add(acc, term);
    }
    return acc;
}

std::string data_path(const std::string& name) {
    return std::string(SIMPLEXCERT_DATA_DIR) + "/" + name;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string write_temp_file(const std::string& stem, const std::string& content) {
    static std::atomic<int> counter{0};
    std::filesystem::path path =
        std::filesystem::temp_directory_path() /
        (stem + "-" + std::to_string(::getpid()) + "-" +
         std::to_string(counter.fetch_add(1)) + ".txt");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    return path.string();
}

CliResult run_cli(const std::string& args, const std::string& env_prefix) {
    std::string cmd;
    if (!env_prefix.empty()) cmd += env_prefix + " ";
    cmd += std::string("\"") + SIMPLEXCERT_BIN_PATH + "\" " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = ::pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

}  // namespace testsupport
