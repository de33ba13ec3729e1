#pragma once

#include <vector>

// Parsed-field corpus for the AD-vs-FD audits. Every expression is smooth and
// finite on [-2, 2]^3 and the set covers each grammar production and function.
inline const std::vector<const char*>& expression_corpus() {
    static const std::vector<const char*> corpus = {
        "x, y, z",
        "-x, y, 0",
        "x + y*z, y - x, z*x",
        "sin(x), cos(y), sin(z)*cos(x)",
        "sin(x)*cos(y), cos(x)*sin(y), 0",
        "exp(x/2), exp(-y/2), 1",
        "log(4 + x), sqrt(9 + y), 1/(4 + z)",
        "tanh(x), sinh(y/2), cosh(z/2)",
        "tan(x/4), 1, 0",
        "x^2 - y^2, 2*x*y, 0",
        "x^3, y^3, z^3",
        "(x + y)^2, (y - z)^2, 1",
        "x/(1 + y^2), y/(1 + z^2), z/(1 + x^2)",
        "2.5e-1*x, 1.5*y, 0.25*z",
        "pi*x, -pi*y, 0",
        "sin(x + y), cos(y + z), sin(z)*sin(x)",
        "sqrt(4 + x^2), 0, 0",
        "exp(sin(x)), cos(exp(y/4)), 1",
        "x*y*z; x + y + z; x - y",
        "cosh(x/2)*cos(y), sinh(x/2)*sin(y), 0",
        "(1 + x^2)^(-1), 1, 0",
        "-(-x), (4 + y)^(1.5), z",
    };
    return corpus;
}
