#pragma once

#include <utility>

#include "polynomial.hpp"
#include "zpoly.hpp"

namespace dpint {

/// gcd(a, b) made monic, together with a / gcd and b / gcd.
template <class F>
struct Cofactors {
    Polynomial<F> gcd;
    Polynomial<F> a_over_gcd;
    Polynomial<F> b_over_gcd;
};

template <class F>
Cofactors<F> gcd_cofactors(const Polynomial<F>& a, const Polynomial<F>& b) {
    Polynomial<F> g = euclid_gcd(a, b);
    auto [qa, ra] = a.divmod(g);
    auto [qb, rb] = b.divmod(g);
    return {std::move(g), std::move(qa), std::move(qb)};
}

/// Over Q the work happens on primitive integer parts with the modular gcd.
inline Cofactors<BigRational> gcd_cofactors(const Polynomial<BigRational>& a, const Polynomial<BigRational>& b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0)");
    if (a.is_zero()) return {b.monic(), Polynomial<BigRational>{}, Polynomial<BigRational>(b.lead())};
    if (b.is_zero()) return {a.monic(), Polynomial<BigRational>(a.lead()), Polynomial<BigRational>{}};
    zpoly::Split sa = zpoly::split(a), sb = zpoly::split(b);
    zpoly::GcdResult r = zpoly::gcd_modular(sa.prim, sb.prim);
    BigRational lead(r.gcd.back());
    return {zpoly::join(lead.inverse(), r.gcd), zpoly::join(sa.content * lead, r.cofactor_a),
            zpoly::join(sb.content * lead, r.cofactor_b)};
}

/// Monic greatest common divisor; gcd(0, 0) is a DomainError.
template <class F>
Polynomial<F> gcd(const Polynomial<F>& a, const Polynomial<F>& b) {
    return gcd_cofactors(a, b).gcd;
}

/// Same result as gcd() over Q, computed by the subresultant remainder
/// sequence instead of the modular route.
inline Polynomial<BigRational> gcd_subresultant(const Polynomial<BigRational>& a, const Polynomial<BigRational>& b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0)");
    zpoly::ZPoly g = zpoly::gcd_subresultant(zpoly::split(a).prim, zpoly::split(b).prim);
    return zpoly::join(BigRational(g.back()).inverse(), g);
}

}  // namespace dpint
