#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace dpint {

using BigInt = mpz_class;

/// Natural log of |n| for a nonzero big integer, accurate to double precision
/// for any size of n.
inline double log_abs(const BigInt& n) {
    if (sgn(n) == 0) throw DomainError("log of zero");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

/// Exact rational number kept in lowest terms with a positive denominator.
/// Zero is 0/1.
class BigRational {
public:
    BigRational() = default;
    BigRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    BigRational(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    explicit BigRational(const BigInt& v) : q_(v) {}

    /// num/den reduced to lowest terms; den == 0 raises DomainError.
    BigRational(const BigInt& num, const BigInt& den) {
        if (sgn(den) == 0) throw DomainError("zero denominator");
        q_.get_num() = num;
        q_.get_den() = den;
        q_.canonicalize();
    }

    static BigRational normalize(const BigInt& num, const BigInt& den) { return {num, den}; }

    /// Accepts "p" or "p/q" with an optional leading sign, decimal digits only.
    static BigRational parse(std::string_view text) {
        std::string s(text);
        std::size_t slash = s.find('/');
        auto parse_int = [&](const std::string& part, std::size_t offset, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
            if (i == part.size()) throw ParseError(offset + i, "expected digits");
            for (std::size_t k = i; k < part.size(); ++k) {
                if (part[k] < '0' || part[k] > '9') throw ParseError(offset + k, "unexpected character");
            }
            BigInt v(part[0] == '+' ? part.substr(1) : part, 10);
            return v;
        };
        if (slash == std::string::npos) return BigRational(parse_int(s, 0, true));
        BigInt num = parse_int(s.substr(0, slash), 0, true);
        BigInt den = parse_int(s.substr(slash + 1), slash + 1, false);
        if (sgn(den) == 0) throw ParseError(slash + 1, "zero denominator");
        return {num, den};
    }

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }
    const mpz_class& num_ref() const { return q_.get_num(); }
    const mpz_class& den_ref() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    BigRational inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        BigRational r;
        mpq_inv(r.q_.get_mpq_t(), q_.get_mpq_t());
        return r;
    }

    BigRational abs() const {
        BigRational r;
        r.q_ = ::abs(q_);
        return r;
    }

    double to_double() const { return q_.get_d(); }

    std::string to_string() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
    BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
    BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
    BigRational& operator/=(const BigRational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
    friend BigRational operator-(const BigRational& a) {
        BigRational r;
        r.q_ = -a.q_;
        return r;
    }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const BigRational& x) { return os << x.to_string(); }

private:
    mpq_class q_;
};

inline BigRational pow(const BigRational& x, long e) {
    if (e < 0) return pow(x.inverse(), -e);
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), x.num_ref().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), x.den_ref().get_mpz_t(), static_cast<unsigned long>(e));
    return {n, d};
}

}  // namespace dpint

template <>
struct std::hash<dpint::BigRational> {
    std::size_t operator()(const dpint::BigRational& x) const noexcept {
        return std::hash<std::string>{}(x.to_string());
    }
};
