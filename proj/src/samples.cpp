#include "simplexcert/samples.hpp"

namespace simplexcert::samples {

Form ternary_deg20() {
    const int n = 3;
    Form x = Form::variable(n, 0);
    Form y = Form::variable(n, 1);
    Form z = Form::variable(n, 2);
    auto linear = [&](int a, int b, int c) {
        return Rational(a) * x + Rational(b) * y + Rational(c) * z;
    };

    Form cyclic = power(y, 4) * power(z, 4) * power(linear(0, 1, 1), 4) *
                      power(linear(2, 1, 1), 8) +
                  power(x, 4) * power(z, 4) * power(linear(1, 0, 1), 4) *
                      power(linear(1, 2, 1), 8) +
                  power(x, 4) * power(y, 4) * power(linear(1, 1, 0), 4) *
                      power(linear(1, 1, 2), 8);
    Form product = power(linear(1, 1, 1), 8) * power(linear(1, 1, 0), 4) *
                   power(linear(1, 0, 1), 4) * power(linear(0, 1, 1), 4);
    return Rational(2187) * cyclic - Rational(256) * product;  // 3^7, 2^8
}

}  // namespace simplexcert::samples
