#pragma once

// Dense univariate polynomials over an exact field F.
//
// F must provide + - * /, unary -, ==, is_zero(), and an overload of
// one_like(const F&) returning the multiplicative identity of the field the
// argument lives in.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bigrational.hpp"
#include "errors.hpp"
#include "modular.hpp"

namespace dpint {

inline BigRational one_like(const BigRational&) { return BigRational(1); }
inline Zp one_like(const Zp& x) { return Zp(1, x.modulus()); }

/// Multiplicative identity without a reference element. For Zp this is the
/// modulus-free one, which adopts the modulus of the other operand.
template <class F>
F field_one();
template <>
inline BigRational field_one<BigRational>() { return BigRational(1); }
template <>
inline Zp field_one<Zp>() { return Zp(1, 0); }

namespace detail {
inline bool small_modulus(std::uint64_t p) { return p != 0 && p < (1ULL << 32); }
}  // namespace detail

template <class F>
class Polynomial {
public:
    using value_type = F;

    /// Degree of the zero polynomial.
    static constexpr long kMinusInfinity = std::numeric_limits<long>::min();

    Polynomial() = default;
    explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Polynomial(const F& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }

    /// c * x^k
    static Polynomial monomial(const F& c, std::size_t k) {
        if (c.is_zero()) return {};
        std::vector<F> v(k + 1, F{});
        for (auto& x : v) x = c - c;
        v[k] = c;
        Polynomial p;
        p.c_ = std::move(v);
        return p;
    }

    /// The variable itself, x.
    static Polynomial variable(const F& one) { return monomial(one, 1); }

    long degree() const { return c_.empty() ? kMinusInfinity : static_cast<long>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<F>& coeffs() const { return c_; }

    /// Coefficient of x^i (zero beyond the degree).
    F operator[](std::size_t i) const { return i < c_.size() ? c_[i] : F{}; }
    const F& lead() const {
        if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
        return c_.back();
    }

    Polynomial monic() const {
        if (c_.empty()) return {};
        F inv = one_like(c_.back()) / c_.back();
        return *this * inv;
    }

    F eval(const F& x) const {
        F acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// p(x + k)
    Polynomial shift(const F& k) const {
        // Horner with the linear polynomial (x + k)
        Polynomial acc;
        if (c_.empty()) return acc;
        Polynomial lin(std::vector<F>{k, one_like(c_.back())});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Polynomial(*it);
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F{});
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F{});
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }

    friend Polynomial operator*(const Polynomial& a, const F& s) {
        if (s.is_zero()) return {};
        Polynomial r = a;
        for (auto& x : r.c_) x *= s;
        r.trim();
        return r;
    }
    friend Polynomial operator*(const F& s, const Polynomial& a) { return a * s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }

    /// Quotient and remainder with deg(rem) < deg(g).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& g) const {
        if (g.is_zero()) throw DomainError("polynomial division by zero");
        if (c_.size() < g.c_.size()) return {Polynomial{}, *this};
        if constexpr (std::is_same_v<F, Zp>) {
            if (detail::small_modulus(g.lead().modulus())) return divmod_small_modulus(g);
        }
        std::vector<F> r = c_;
        std::vector<F> q(c_.size() - g.c_.size() + 1, F{});
        F inv = one_like(g.lead()) / g.lead();
        const std::size_t m = g.c_.size() - 1;
        for (std::size_t k = q.size(); k-- > 0;) {
            F t = r[k + m] * inv;
            q[k] = t;
            if (t.is_zero()) continue;
            for (std::size_t i = 0; i <= m; ++i) r[k + i] -= t * g.c_[i];
        }
        r.resize(m);
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Human-readable form in the given variable, highest power first.
    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const F& a = c_[k];
            if (a.is_zero()) continue;
            std::string s = a.to_string();
            bool neg = !s.empty() && s[0] == '-';
            if (neg) s = s.substr(1);
            if (!out.empty()) out += neg ? " - " : " + ";
            else if (neg) out += "-";
            bool unit = (s == "1");
            if (k == 0) {
                out += s;
            } else {
                if (!unit) out += (s.find_first_of("+-/ ") != std::string::npos ? "(" + s + ")" : s) + "*";
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    static Polynomial multiply(const Polynomial& a, const Polynomial& b);

    // Z/pZ with p < 2^32: products fit in 64 bits, so sums of them are
    // accumulated in 128 bits and reduced once per coefficient.
    static Polynomial multiply_small_modulus(const Polynomial& a, const Polynomial& b, std::uint64_t p) {
        std::vector<unsigned __int128> acc(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            const std::uint64_t x = a.c_[i].value();
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += x * b.c_[j].value();
        }
        std::vector<F> r;
        r.reserve(acc.size());
        for (auto v : acc) r.emplace_back(static_cast<std::uint64_t>(v % p), p);
        return Polynomial(std::move(r));
    }

    std::pair<Polynomial, Polynomial> divmod_small_modulus(const Polynomial& g) const {
        const std::uint64_t p = g.lead().modulus();
        const std::size_t m = g.c_.size() - 1;
        std::vector<unsigned __int128> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].value();
        std::vector<F> q(c_.size() - m, F(0, p));
        const std::uint64_t inv = g.lead().inverse().value();
        for (std::size_t k = q.size(); k-- > 0;) {
            const std::uint64_t top = static_cast<std::uint64_t>(r[k + m] % p);
            const std::uint64_t t = top * inv % p;
            q[k] = F(t, p);
            if (t == 0) continue;
            // subtract t * g by adding (p - t) * g
            const std::uint64_t nt = p - t;
            for (std::size_t i = 0; i < m; ++i) r[k + i] += nt * g.c_[i].value();
        }
        std::vector<F> rem;
        rem.reserve(m);
        for (std::size_t i = 0; i < m; ++i) rem.emplace_back(static_cast<std::uint64_t>(r[i] % p), p);
        return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
    }

    std::vector<F> c_;  // c_[i] is the coefficient of x^i
};

namespace zpoly {
Polynomial<BigRational> multiply_rational(const Polynomial<BigRational>& a, const Polynomial<BigRational>& b);
}  // namespace zpoly

template <class F>
Polynomial<F> Polynomial<F>::multiply(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if constexpr (std::is_same_v<F, BigRational>) {
        if (a.size() > 4 && b.size() > 4) return zpoly::multiply_rational(a, b);
    } else if constexpr (std::is_same_v<F, Zp>) {
        const std::uint64_t p = a.lead().modulus() ? a.lead().modulus() : b.lead().modulus();
        if (detail::small_modulus(p)) return multiply_small_modulus(a, b, p);
    }
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F{});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
}

/// Monic gcd by the Euclidean algorithm; meant for exact fields where
/// coefficients stay bounded (Z/pZ, small instances over Q(k)).
template <class F>
Polynomial<F> euclid_gcd(Polynomial<F> a, Polynomial<F> b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0)");
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace dpint

#include "zpoly.hpp"
