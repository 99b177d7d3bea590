#pragma once

#include <random>
#include <string>
#include <vector>

#include "simplexcert/form.hpp"
#include "simplexcert/simplex.hpp"

// Shared helpers for the unit and acceptance binaries. Everything here is
// deterministic given the caller's RNG so failures reproduce exactly.
namespace testsupport {

using Rng = std::mt19937_64;

// Nonzero homogeneous form with integer coefficients in [-9, 9].
simplexcert::Form random_form(Rng& rng, int n, int d);

// Random rational point of the standard simplex (faces included).
simplexcert::RationalPoint random_simplex_point(Rng& rng, int n);

// Random rational point with all coordinates strictly positive.
simplexcert::RationalPoint random_interior_point(Rng& rng, int n);

// Random invertible column-stochastic matrix (columns are simplex points).
simplexcert::SimplexMatrix random_simplex_matrix(Rng& rng, int n);

// Exact matrix-vector product M*x.
simplexcert::RationalPoint apply_matrix(const simplexcert::SimplexMatrix& m,
                                        const simplexcert::RationalPoint& x);

// All exponent vectors over n variables with total degree <= d.
std::vector<simplexcert::Monomial> multi_indices_up_to(int n, int d);

// Independent expansion oracle: substitutes the row linear forms into every
// monomial using only Form arithmetic (add / multiply / power), sharing no
// code with expand().
simplexcert::Form expand_by_composition(const simplexcert::Form& f,
                                        const simplexcert::SimplexMatrix& m);

// Location of the checked-in data files (set by the build).
std::string data_path(const std::string& name);

std::string read_text_file(const std::string& path);

// Writes content to a fresh file under the system temp directory and
// returns its path.
std::string write_temp_file(const std::string& stem, const std::string& content);

struct CliResult {
    int exit_code;
    std::string output;  // stdout and stderr combined
};

// Runs the installed CLI with the given argument string; env_prefix is
// prepended to the shell command (e.g. "SIMPLEXCERT_WORKERS=2").
CliResult run_cli(const std::string& args, const std::string& env_prefix = "");

}  // namespace testsupport
