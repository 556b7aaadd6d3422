#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>

#include "poly_gcd.hpp"

namespace dpint {

/// A point of the projective line: a field element or infinity.
template <class F>
struct ProjectivePoint {
    std::optional<F> finite;  // nullopt is the point at infinity

    static ProjectivePoint at(F x) { return {std::move(x)}; }
    static ProjectivePoint infinity() { return {std::nullopt}; }
    bool is_infinity() const { return !finite.has_value(); }
};

/// num/den with gcd(num, den) = 1 and den monic; zero is 0/1.
template <class F>
class RationalFunction {
public:
    using Poly = Polynomial<F>;

    RationalFunction() : num_(), den_(field_one<F>()) {}
    explicit RationalFunction(Poly p)
        : num_(std::move(p)), den_(num_.is_zero() ? field_one<F>() : one_like(num_.lead())) {}
    explicit RationalFunction(const F& c) : RationalFunction(Poly(c)) {}
    RationalFunction(long c) : RationalFunction(F(c)) {}  // NOLINT(google-explicit-constructor)

    /// Reduces num/den to lowest terms.
    RationalFunction(const Poly& num, const Poly& den) {
        if (den.is_zero()) throw DomainError("rational function with zero denominator");
        if (num.is_zero()) {
            den_ = Poly(one_like(den.lead()));
            return;
        }
        auto c = gcd_cofactors(num, den);
        set_monic(std::move(c.a_over_gcd), std::move(c.b_over_gcd));
    }

    /// Caller guarantees gcd(num, den) = 1; only the monic scaling is applied.
    static RationalFunction from_coprime(Poly num, Poly den) {
        if (den.is_zero()) throw DomainError("rational function with zero denominator");
        RationalFunction r;
        if (num.is_zero()) {
            return r;
        }
        r.set_monic(std::move(num), std::move(den));
        return r;
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.degree() == 0 && num_.degree() == 0 && num_.lead() == den_.lead(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return den_.degree() == 0 && num_.degree() <= 0; }
    /// Value of a constant function.
    F constant_value() const {
        if (!is_constant()) throw DomainError("not a constant function");
        return num_.is_zero() ? F{} : num_.lead();
    }

    /// max(deg num, deg den); the zero function has degree 0.
    long degree() const {
        if (num_.is_zero()) return 0;
        return std::max(num_.degree(), den_.degree());
    }

    RationalFunction inverse() const {
        if (num_.is_zero()) throw DomainError("inverse of zero rational function");
        return from_coprime(den_, num_);
    }

    /// Order of vanishing at a point (negative for poles); at infinity it
    /// is deg den - deg num.
    long local_order(const ProjectivePoint<F>& point) const {
        if (num_.is_zero()) throw DomainError("local order of the zero function");
        if (point.is_infinity()) return den_.degree() - num_.degree();
        return multiplicity(num_, *point.finite) - multiplicity(den_, *point.finite);
    }
    long local_order(const F& x) const { return local_order(ProjectivePoint<F>::at(x)); }

    F eval(const F& x) const {
        F d = den_.eval(x);
        if (d.is_zero()) throw PoleError(x.to_string(), "evaluation at a pole");
        return num_.eval(x) / d;
    }

    /// f(x + k)
    RationalFunction shift(const F& k) const { return from_coprime(num_.shift(k), den_.shift(k)); }

    RationalFunction square() const { return from_coprime(num_ * num_, den_ * den_); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) { return add(a, b, false); }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return add(a, b, true); }
    friend RationalFunction operator-(const RationalFunction& a) {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        // cross-cancel: gcd(a.num, b.den) and gcd(b.num, a.den)
        auto c1 = cancel(a.num_, b.den_);
        auto c2 = cancel(b.num_, a.den_);
        return from_coprime(c1.first * c2.first, c2.second * c1.second);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DomainError("division by zero rational function");
        return a * b.inverse();
    }

    friend RationalFunction operator*(const RationalFunction& a, const F& s) {
        if (s.is_zero()) return {};
        RationalFunction r = a;
        r.num_ = r.num_ * s;
        return r;
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string(const std::string& var = "x") const {
        if (den_.degree() == 0) return num_.to_string(var);
        auto wrap = [](const std::string& s) {
            return s.find_first_of(" /") == std::string::npos ? s : "(" + s + ")";
        };
        return wrap(num_.to_string(var)) + "/" + wrap(den_.to_string(var));
    }

private:
    void set_monic(Poly num, Poly den) {
        F lc = den.lead();
        if (lc.is_one()) {
            num_ = std::move(num);
            den_ = std::move(den);
            return;
        }
        F inv = one_like(lc) / lc;
        num_ = num * inv;
        den_ = den * inv;
    }

    // (a / gcd(a, b), b / gcd(a, b)), skipping the gcd when either side is a unit
    static std::pair<Poly, Poly> cancel(const Poly& a, const Poly& b) {
        if (a.degree() <= 0 || b.degree() <= 0) return {a, b};
        auto c = gcd_cofactors(a, b);
        return {std::move(c.a_over_gcd), std::move(c.b_over_gcd)};
    }

    static long multiplicity(Poly p, const F& x) {
        long m = 0;
        Poly lin(std::vector<F>{-x, one_like(p.lead())});
        for (;;) {
            if (!p.eval(x).is_zero()) return m;
            p = p.divmod(lin).first;
            ++m;
        }
    }

    static RationalFunction add(const RationalFunction& a, const RationalFunction& b, bool negate_b) {
        Poly bn = negate_b ? -b.num_ : b.num_;
        if (a.is_zero()) return from_coprime(std::move(bn), b.den_);
        if (b.is_zero()) return a;
        if (a.den_.degree() == 0 && b.den_.degree() == 0) return RationalFunction(a.num_ + bn);
        // a/g a' + b/g b' = (a d' + b b') / (g b' d'), common factors only with g
        auto c = cancel_full(a.den_, b.den_);
        const Poly& g = c.gcd;
        Poly num = a.num_ * c.b_over_gcd + bn * c.a_over_gcd;
        if (num.is_zero()) return {};
        if (g.degree() <= 0) return from_coprime(std::move(num), c.a_over_gcd * b.den_);
        auto r = gcd_cofactors(num, g);
        return from_coprime(std::move(r.a_over_gcd), r.b_over_gcd * c.a_over_gcd * c.b_over_gcd);
    }

    static Cofactors<F> cancel_full(const Poly& a, const Poly& b) {
        if (a.degree() <= 0 || b.degree() <= 0) {
            Poly one(one_like(a.lead()));
            return {one, a, b};
        }
        return gcd_cofactors(a, b);
    }

    Poly num_;
    Poly den_;
};

template <class F>
RationalFunction<F> one_like(const RationalFunction<F>&) {
    return RationalFunction<F>(field_one<F>());
}

/// Rational functions over Q: the coefficient functions (in j), the field
/// iterates (in z) and the Laurent coefficients (in the free parameter).
using QPoly = Polynomial<BigRational>;
using QFunc = RationalFunction<BigRational>;

}  // namespace dpint
