#pragma once

#include "simplexcert/form.hpp"

namespace simplexcert::samples {

/// Degree-20 cyclic ternary form built as
///   3^7 * (y^4 z^4 (y+z)^4 (2x+y+z)^8 + x^4 z^4 (x+z)^4 (x+2y+z)^8
///          + x^4 y^4 (x+y)^4 (x+y+2z)^8)
///   - 2^8 * (x+y+z)^8 (x+y)^4 (x+z)^4 (y+z)^4.
/// Nonnegative on the simplex but not coefficientwise: it vanishes at the
/// three vertices and the center, and one barycentric subdivision step makes
/// every expanded coefficient nonnegative.
Form ternary_deg20();

}  // namespace simplexcert::samples
