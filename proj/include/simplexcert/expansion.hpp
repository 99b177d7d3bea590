#pragma once

#include <string>

#include "simplexcert/form.hpp"
#include "simplexcert/simplex.hpp"

namespace simplexcert {

// Classification of a form's coefficient vector over all C(n+d-1, d) monomial
// slots of degree d. AllPositive demands a strictly positive coefficient in
// every slot: a missing monomial (coefficient 0) disqualifies. The classes
// are mutually exclusive and exhaustive.
enum class SignClass {
    AllPositive,
    AllNonnegative,
    AllNegative,
    AllNonpositive,
    Mixed,
    ZeroForm,
};

const char* to_string(SignClass c);
SignClass sign_class_from_string(const std::string& s);

// Number of degree-d monomials in n variables, C(n+d-1, d).
Integer monomial_slot_count(int n, int d);

// The expansion of f on the sub-simplex M: the exact composition f(M x),
// homogeneous of the same degree. Uniform coefficient signs of the result
// certify the sign of f on the cell.
Form expand(const Form& f, const SimplexMatrix& m);

SignClass sign_classify(const Form& f);

// Sign (-1, 0, +1) of f at the sum of M's columns; by homogeneity, the sign
// of f at the cell's barycenter.
int cell_center_sign(const Form& f, const SimplexMatrix& m);

}  // namespace simplexcert
