#pragma once

// Places of Q, p-adic valuations and absolute values, logarithmic heights.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "bigrational.hpp"

namespace dpint {

/// Valuation of zero.
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/// A place of Q: a finite prime p or the infinite place.
class Place {
public:
    static Place infinity() { return Place(); }
    static Place prime(const BigInt& p) {
        if (!is_prime(p)) throw DomainError("place " + p.get_str() + " is not prime");
        Place v;
        v.prime_ = p;
        return v;
    }
    static Place prime(unsigned long p) { return prime(BigInt(p)); }

    /// "inf" / "oo" / "∞" or a decimal prime.
    static Place parse(const std::string& s) {
        if (s == "inf" || s == "oo" || s == "∞") return infinity();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw ParseError(i, "bad place '" + s + "'");
        }
        if (s.empty()) throw ParseError(0, "empty place");
        return prime(BigInt(s));
    }

    bool is_infinite() const { return sgn(prime_) == 0; }
    const BigInt& p() const { return prime_; }
    double log_p() const { return is_infinite() ? 0.0 : log_abs(prime_); }

    std::string to_string() const { return is_infinite() ? "inf" : prime_.get_str(); }

    friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
    /// Finite primes ascending, infinity last.
    friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
        if (a.is_infinite() || b.is_infinite()) {
            return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
        }
        int c = cmp(a.prime_, b.prime_);
        return c <=> 0;
    }

private:
    Place() = default;
    BigInt prime_;  // 0 encodes the infinite place
};

/// r with x = (a/b) p^r, p not dividing ab. Zero gives kInfiniteValuation.
inline long padic_valuation(const BigRational& x, const Place& v) {
    if (v.is_infinite()) throw DomainError("valuation needs a finite place");
    if (x.is_zero()) return kInfiniteValuation;
    BigInt rest;
    long up = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.num_ref().get_mpz_t(), v.p().get_mpz_t()));
    long down = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.den_ref().get_mpz_t(), v.p().get_mpz_t()));
    return up - down;
}

inline long padic_valuation(const BigRational& x, unsigned long p) {
    return padic_valuation(x, Place::prime(p));
}

/// log|x|_v; -inf for x = 0. Exact up to double rounding for arbitrarily large x.
inline double log_abs_at_place(const BigRational& x, const Place& v) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    if (v.is_infinite()) return log_abs(x.num_ref()) - log_abs(x.den_ref());
    return -static_cast<double>(padic_valuation(x, v)) * v.log_p();
}

/// |x|_v as a double (may overflow to inf or underflow to 0 for extreme x).
inline double abs_at_place(const BigRational& x, const Place& v) {
    if (x.is_zero()) return 0.0;
    if (v.is_infinite()) return x.abs().to_double();
    return std::exp(log_abs_at_place(x, v));
}

/// max(|num|, den), the integer whose log is the height.
inline BigInt exact_height(const BigRational& x) {
    BigInt n = ::abs(x.num_ref());
    return n > x.den_ref() ? n : x.den_ref();
}

/// h(p/q) = log max(|p|, |q|).
inline double log_height(const BigRational& x) { return log_abs(exact_height(x)); }

inline double log_plus(double logv) { return std::max(0.0, logv); }

namespace detail {

inline BigInt pollard_brent(const BigInt& n, unsigned long seed, long budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    BigInt y = seed % n, c = (seed * 7 + 1) % n, g = 1, q = 1, x, ys;
    const long m = 128;
    long r = 1;
    auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
    long spent = 0;
    do {
        x = y;
        for (long i = 0; i < r; ++i) y = f(y);
        long k = 0;
        do {
            ys = y;
            for (long i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = (q * ::abs(BigInt(x - y))) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            spent += m;
            if (spent > budget) return 0;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            BigInt d = ::abs(BigInt(x - ys));
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g == n ? BigInt(0) : g;
}

inline void factor_into(BigInt n, std::map<BigInt, long>& out, long budget) {
    if (n <= 1) return;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[BigInt(p)] += 1;
            n /= p;
        }
    }
    for (unsigned long p = 17; p < 10000 && n > 1; p += 2) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[BigInt(p)] += 1;
            n /= p;
        }
        if (BigInt(p) * p > n) break;
    }
    std::vector<BigInt> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        BigInt m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            out[m] += 1;
            continue;
        }
        BigInt d = 0;
        for (unsigned long seed = 2; d == 0 && seed < 40; ++seed) d = pollard_brent(m, seed, budget);
        if (d == 0) throw DomainError("factorization budget exceeded for " + m.get_str());
        stack.push_back(d);
        stack.push_back(m / d);
    }
}

}  // namespace detail

/// Prime factorization of |n| (n != 0); trial division then Pollard-Brent.
inline std::map<BigInt, long> factorize(const BigInt& n, long budget = 2'000'000) {
    if (sgn(n) == 0) throw DomainError("factorization of zero");
    std::map<BigInt, long> out;
    detail::factor_into(::abs(n), out, budget);
    return out;
}

/// Per-place split of the height: h(x) = sum over v of log+ |x|_v.
struct HeightDecomposition {
    std::map<Place, double> contributions;  // only nonzero entries
    double total = 0.0;
    BigInt exact_total;  // max(|num|, den)
};

/// Only primes dividing the denominator contribute at finite places; the
/// numerator's primes have |x|_p < 1.
inline HeightDecomposition height_decomposition(const BigRational& x) {
    if (x.is_zero()) throw DomainError("height decomposition of zero");
    HeightDecomposition out;
    for (const auto& [p, e] : factorize(x.den_ref())) {
        Place v = Place::prime(p);
        out.contributions.emplace(v, static_cast<double>(e) * v.log_p());
    }
    double at_inf = log_plus(log_abs_at_place(x, Place::infinity()));
    if (at_inf > 0.0) out.contributions.emplace(Place::infinity(), at_inf);
    for (const auto& [v, c] : out.contributions) out.total += c;
    out.exact_total = exact_height(x);
    return out;
}

}  // namespace dpint
