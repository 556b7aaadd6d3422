#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "bigrational.hpp"
#include "errors.hpp"

namespace dpint {

/// Element of Z/pZ for a word-sized prime p < 2^62. The modulus travels with
/// the value; a default-constructed element is 0 in "any" field and adopts the
/// modulus of the other operand.
class Zp {
public:
    Zp() = default;
    Zp(std::uint64_t v, std::uint64_t p) : v_(p ? v % p : v), p_(p) {}
    Zp(long v) : v_(0), p_(0) {  // NOLINT(google-explicit-constructor)
        if (v != 0) throw DomainError("integer literal without modulus");
    }

    /// Reduction of a rational; fails when p divides the denominator.
    static Zp from_rational(const BigRational& x, std::uint64_t p) {
        std::uint64_t d = mpz_fdiv_ui(x.den_ref().get_mpz_t(), p);
        if (d == 0) throw DomainError("denominator vanishes mod " + std::to_string(p));
        std::uint64_t n = mpz_fdiv_ui(x.num_ref().get_mpz_t(), p);
        return Zp(n, p) / Zp(d, p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Zp inverse() const {
        if (v_ == 0) throw DomainError("inverse of zero mod p");
        // extended Euclid on signed 128-bit
        __int128 a = v_, b = p_, x0 = 1, x1 = 0;
        while (b != 0) {
            __int128 q = a / b;
            __int128 t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        __int128 r = x0 % static_cast<__int128>(p_);
        if (r < 0) r += p_;
        return Zp(static_cast<std::uint64_t>(r), p_);
    }

    friend Zp operator+(const Zp& a, const Zp& b) {
        std::uint64_t p = a.p_ ? a.p_ : b.p_;
        std::uint64_t s = a.v_ + b.v_;
        if (s >= p) s -= p;
        return raw(s, p);
    }
    friend Zp operator-(const Zp& a, const Zp& b) {
        std::uint64_t p = a.p_ ? a.p_ : b.p_;
        return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p - b.v_, p);
    }
    friend Zp operator-(const Zp& a) { return raw(a.v_ ? a.p_ - a.v_ : 0, a.p_); }
    friend Zp operator*(const Zp& a, const Zp& b) {
        std::uint64_t p = a.p_ ? a.p_ : b.p_;
        if (p == 0) return raw(a.v_ * b.v_, 0);  // product of modulus-free units
        if (p < (1ULL << 32)) return raw(a.v_ * b.v_ % p, p);
        return raw(static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v_) * b.v_ % p), p);
    }
    friend Zp operator/(const Zp& a, const Zp& b) { return a * b.inverse(); }
    Zp& operator+=(const Zp& o) { return *this = *this + o; }
    Zp& operator-=(const Zp& o) { return *this = *this - o; }
    Zp& operator*=(const Zp& o) { return *this = *this * o; }
    Zp& operator/=(const Zp& o) { return *this = *this / o; }

    friend bool operator==(const Zp& a, const Zp& b) { return a.v_ == b.v_; }

    std::string to_string() const { return std::to_string(v_); }

private:
    static Zp raw(std::uint64_t v, std::uint64_t p) {
        Zp z;
        z.v_ = v;
        z.p_ = p;
        return z;
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

/// Deterministic stream of primes in [2^(bits-1), 2^bits), 3 <= bits <= 62.
class PrimeSource {
public:
    explicit PrimeSource(std::uint64_t seed, int bits = 62) : rng_(seed), bits_(bits) {
        if (bits < 3 || bits > 62) throw DomainError("prime size out of range");
    }

    std::uint64_t next() {
        std::uniform_int_distribution<std::uint64_t> dist(1ULL << (bits_ - 1), (1ULL << bits_) - 1);
        BigInt c(std::to_string(dist(rng_)));
        mpz_nextprime(c.get_mpz_t(), c.get_mpz_t());
        if (mpz_sizeinbase(c.get_mpz_t(), 2) > static_cast<std::size_t>(bits_)) return next();
        return std::stoull(c.get_str());
    }

private:
    std::mt19937_64 rng_;
    int bits_;
};

}  // namespace dpint
