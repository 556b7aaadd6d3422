#pragma once

// Shared generators for randomized tests and the acceptance runner.

#include <random>
#include <string>

#include "dpint/coefficient_family.hpp"

namespace dpint::testgen {

/// Random integer polynomial in j of degree <= max_degree, as an expression string.
inline std::string random_poly_expr(std::mt19937_64& rng, int max_degree, long coeff_bound) {
    std::uniform_int_distribution<long> c(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<int> deg(0, max_degree);
    const int d = deg(rng);
    std::string s = "0";
    for (int k = 0; k <= d; ++k) s += " + (" + std::to_string(c(rng)) + ")*j^" + std::to_string(k);
    return s;
}

/// Random rational function: a polynomial, or with probability 1/3 a
/// quotient by a monic linear factor with a root outside [-100, 100].
inline std::string random_rational_expr(std::mt19937_64& rng, int max_degree, long coeff_bound) {
    std::string num = random_poly_expr(rng, max_degree, coeff_bound);
    if (rng() % 3 != 0) return num;
    std::uniform_int_distribution<long> root(101, 500);
    return "(" + num + ")/(j + " + std::to_string(root(rng)) + ")";
}

/// Random family with c not identically zero. About one family in four is
/// confined everywhere: a = 0, b linear, c constant.
inline CoefficientFamily random_family(std::mt19937_64& rng) {
    if (rng() % 4 == 0) {
        std::uniform_int_distribution<long> c(-9, 9);
        long cc = 0;
        while (cc == 0) cc = c(rng);
        return CoefficientFamily::parse("0", std::to_string(c(rng)) + "*j + " + std::to_string(c(rng)),
                                        std::to_string(cc));
    }
    for (;;) {
        std::string a = rng() % 2 ? std::string("0") : random_rational_expr(rng, 2, 5);
        std::string b = random_rational_expr(rng, 2, 5);
        std::string c = random_rational_expr(rng, 2, 5);
        try {
            return CoefficientFamily::parse(a, b, c);
        } catch (const DomainError&) {
            // c vanished identically; draw again
        }
    }
}

}  // namespace dpint::testgen
