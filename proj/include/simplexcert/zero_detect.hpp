#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simplexcert/bounds.hpp"
#include "simplexcert/form.hpp"
#include "simplexcert/sds.hpp"

namespace simplexcert {

/// System f_1, ..., f_k of homogeneous forms with integer raw coefficients
/// over a shared variable count; degrees may differ.
struct SystemInput {
    std::vector<Form> forms;

    int variable_count() const { return forms.front().variable_count(); }
    int max_degree() const;

    /// Validates: at least one form, none zero, shared variable count,
    /// integer coefficients throughout. Throws std::invalid_argument.
    static SystemInput from_forms(std::vector<Form> forms);
};

/// F = sum over i of f_i^2 * (x_1+...+x_n)^(2(d-d_i)) with d the maximum
/// degree: a degree-2d integer form, nonnegative on the simplex, vanishing
/// there exactly at the common zeros of the system.
Form sum_of_squares_form(const SystemInput& sys);

/// Cell-diameter threshold below which "not all expanded coefficients of F
/// positive" is equivalent to the system having a real zero on the simplex.
/// log2 domain: -log2(2d * (2d)! * C(n+2d-1, 2d) * L_F) plus the minimum
/// value lower bound for (n, 2d, adjusted height). Requires max degree >= 1.
BoundReport zero_detection_threshold(const SystemInput& sys);

enum class ZeroVerdict { ZeroFound, NoZero, Undecided };
const char* to_string(ZeroVerdict v);
ZeroVerdict zero_verdict_from_string(const std::string& s);

/// Outcome of the budgeted zero search, carrying the bounds block and the
/// underlying subdivision certificate for independent replay.
struct ZeroReport {
    ZeroVerdict verdict = ZeroVerdict::Undecided;
    std::optional<RationalPoint> witness;  // exact common zero (ZeroFound)
    Integer theoretical_depth{0};          // depth the threshold would demand
    int searched_depth = 0;
    int budget = 0;
    Rational raw_height_value;             // H
    Rational adjusted_height_value;        // max(H, 4n+2)
    Rational normalized_height_value;      // L_F
    Rational threshold_log2;
    Certificate certificate;

    std::string to_text() const;
    static ZeroReport from_text(const std::string& text);  // throws ParseError
};

/// Searches for simplex zeros of the system up to min(budget_depth,
/// theoretical depth): an exact common zero at any probed vertex or center
/// gives ZeroFound; a complete all-positive frontier for F gives NoZero
/// (sound at any depth); otherwise Undecided.
ZeroReport detect_zero(const SystemInput& sys, int budget_depth, int workers = 1);

/// Recomputes F, the bounds block and the certificate content from scratch
/// and checks every stored value. Returns false on mismatch; structural
/// problems throw std::invalid_argument.
bool replay_zero_report(const SystemInput& sys, const ZeroReport& report,
                        std::string* reason = nullptr);

}  // namespace simplexcert
