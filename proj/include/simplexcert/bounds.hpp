#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simplexcert/form.hpp"
#include "simplexcert/rational.hpp"

namespace simplexcert {

/// One computed bound together with the inputs that produced it. The value is
/// carried either as an exact rational or, when the true value is far too
/// small to expand (e.g. 320^-32 scale), as a rational log2 proxy.
struct BoundReport {
    std::string kind;
    std::optional<Rational> value_exact;
    std::optional<Rational> value_log2;
    bool log2_is_authoritative = false;
    std::vector<std::pair<std::string, std::string>> inputs;

    /// Labeled key/value text block, one line per field.
    std::string to_text() const;
};

/// L_f: the largest |a_beta * beta! / d!| over the stored terms.
/// Throws std::domain_error on the zero form.
Rational normalized_height(const Form& f);

/// H: the largest |a_beta| over the stored raw coefficients.
/// Throws std::domain_error on the zero form.
Rational raw_height(const Form& f);

/// Uniform bound d! * L_f on |D^alpha f(X)| for all |alpha| <= d and X on
/// the simplex. Throws std::domain_error on the zero form.
Rational derivative_bound(const Form& f);

/// Diameter threshold below which every sub-simplex containing P inherits
/// the sign of f(P): (d * d! * C(n+d-1, d) * L_f)^-1 * |f(P)|.
/// Returns value 0 when f(P) = 0 (no cell qualifies).
BoundReport expansion_sign_threshold(const Form& f, const RationalPoint& p);

/// Same threshold with |f(P)| replaced by an externally supplied positive
/// lower bound on |f| over the whole simplex.
BoundReport expansion_sign_threshold_from_min(const Form& f,
                                              const Rational& min_lower_bound);

/// max(H, 4n+2): the coefficient-height floor used by the zero-detection
/// threshold. Requires H >= 1.
Rational adjusted_height(const Rational& h, int n);

/// Lower bound on the least nonzero value a degree-two_d integer form of
/// adjusted height h_tilde can attain on the simplex. The bound is
/// 2^(-E * S) with E = n * 2^n * two_d^n and
/// S = 4 - n/2 + log2(h_tilde) + n * log2(two_d); only its log2 is reported,
/// with the inexact logs rounded so the bound can only shrink (sound side).
BoundReport min_value_lower_bound(int n, int two_d, const Rational& h_tilde);

/// Smallest N with ((n-1)/n)^N < threshold. Computed in the log2 domain with
/// directed rounding that can only increase N, then verified (and minimized)
/// by exact powering when N <= 100000. Throws on threshold <= 0.
Integer required_depth(int n, const Rational& threshold);

/// Same, for a threshold available only as a rational log2 value; no exact
/// verification is possible, so the soundly rounded N is returned as is.
Integer required_depth_log2(int n, const Rational& threshold_log2);

}  // namespace simplexcert
