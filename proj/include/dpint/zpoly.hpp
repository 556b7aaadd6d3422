#pragma once

// Integer-coefficient polynomial kernels backing Polynomial<BigRational>:
// content/primitive-part splitting, multiplication without per-term
// canonicalization, exact division, and two gcd routes (multi-modular with
// trial division, and the subresultant PRS).

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace dpint::zpoly {

using ZPoly = std::vector<BigInt>;  // low to high, no trailing zeros

inline void trim(ZPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline long degree(const ZPoly& a) { return a.empty() ? Polynomial<BigRational>::kMinusInfinity : static_cast<long>(a.size()) - 1; }

inline BigInt content(const ZPoly& a) {
    BigInt g = 0;
    for (const auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

/// Primitive part with positive leading coefficient.
inline ZPoly primitive(ZPoly a) {
    trim(a);
    if (a.empty()) return a;
    BigInt g = content(a);
    if (sgn(a.back()) < 0) g = -g;
    if (g != 1) {
        for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    return a;
}

/// f = content * P with P primitive, positive lead; f = 0 gives (0, {}).
struct Split {
    BigRational content;
    ZPoly prim;
};

inline Split split(const Polynomial<BigRational>& f) {
    if (f.is_zero()) return {BigRational(0), {}};
    BigInt l = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den_ref().get_mpz_t());
    ZPoly p(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& c = f.coeffs()[i];
        if (c.is_zero()) continue;
        mpz_divexact(p[i].get_mpz_t(), l.get_mpz_t(), c.den_ref().get_mpz_t());
        p[i] *= c.num_ref();
    }
    BigInt g = content(p);
    if (sgn(p.back()) < 0) g = -g;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return {BigRational(g, l), std::move(p)};
}

inline Polynomial<BigRational> join(const BigRational& content, const ZPoly& p) {
    std::vector<BigRational> out;
    out.reserve(p.size());
    const BigInt& n = content.num_ref();
    const BigInt& d = content.den_ref();
    for (const auto& c : p) out.emplace_back(BigInt(c * n), d);
    return Polynomial<BigRational>(std::move(out));
}

inline ZPoly mul_schoolbook(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        mpz_srcptr ai = a[i].get_mpz_t();
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
    }
    trim(r);
    return r;
}

namespace detail {

// Packs |coefficients| of one sign into a single integer, `limbs` limbs per slot.
inline BigInt kronecker_pack(const ZPoly& a, int sign, std::size_t limbs) {
    std::vector<mp_limb_t> buf(a.size() * limbs, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) != sign) continue;
        std::size_t n = 0;
        mpz_export(buf.data() + i * limbs, &n, -1, sizeof(mp_limb_t), 0, 0, a[i].get_mpz_t());
    }
    BigInt r;
    mpz_import(r.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
    return r;
}

inline std::vector<mp_limb_t> limbs_of(const BigInt& x, std::size_t count) {
    std::vector<mp_limb_t> buf(count, 0);
    if (sgn(x) != 0) {
        std::size_t n = 0;
        mpz_export(buf.data(), &n, -1, sizeof(mp_limb_t), 0, 0, x.get_mpz_t());
    }
    return buf;
}

inline std::size_t max_bits(const ZPoly& a) {
    std::size_t m = 0;
    for (const auto& c : a) m = std::max(m, mpz_sizeinbase(c.get_mpz_t(), 2));
    return m;
}

}  // namespace detail

namespace detail {

// sum a_i 2^(64 L i) for signed coefficients
inline BigInt kronecker_eval(const ZPoly& a, std::size_t limbs) {
    return kronecker_pack(a, 1, limbs) - kronecker_pack(a, -1, limbs);
}

// inverse of kronecker_eval with balanced digits in (-2^(64L-1), 2^(64L-1)]
inline ZPoly kronecker_unpack_signed(const BigInt& v, std::size_t limbs, std::size_t len) {
    const int s = sgn(v);
    BigInt mag = abs(v);
    const std::size_t total = std::max(len * limbs, mpz_size(mag.get_mpz_t()));
    auto buf = limbs_of(mag, total);
    BigInt base, half;
    mpz_setbit(base.get_mpz_t(), limbs * GMP_NUMB_BITS);
    mpz_setbit(half.get_mpz_t(), limbs * GMP_NUMB_BITS - 1);
    ZPoly r;
    r.reserve(len);
    int carry = 0;
    std::size_t slots = (total + limbs - 1) / limbs;
    buf.resize(slots * limbs, 0);
    for (std::size_t i = 0; i < slots; ++i) {
        BigInt d;
        mpz_import(d.get_mpz_t(), limbs, -1, sizeof(mp_limb_t), 0, 0, buf.data() + i * limbs);
        d += carry;
        carry = 0;
        if (d > half) {
            d -= base;
            carry = 1;
        }
        r.push_back(s < 0 ? BigInt(-d) : d);
    }
    if (carry) r.push_back(BigInt(s < 0 ? -1 : 1));
    trim(r);
    return r;
}

}  // namespace detail

/// Product by Kronecker substitution: both operands are evaluated at 2^(64 L)
/// with L wide enough that every product coefficient fits a balanced slot,
/// multiplied as integers, and unpacked.
inline ZPoly mul_kronecker(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t len = a.size() + b.size() - 1;
    const std::size_t bits = detail::max_bits(a) + detail::max_bits(b) +
                             mpz_sizeinbase(BigInt(static_cast<unsigned long>(std::min(a.size(), b.size()))).get_mpz_t(), 2) + 2;
    const std::size_t limbs = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
    BigInt p = detail::kronecker_eval(a, limbs) * detail::kronecker_eval(b, limbs);
    ZPoly r = detail::kronecker_unpack_signed(p, limbs, len);
    return r;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (std::min(a.size(), b.size()) < 12) return mul_schoolbook(a, b);
    return mul_kronecker(a, b);
}

inline ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline ZPoly scale(const ZPoly& a, const BigInt& s) {
    ZPoly r(a);
    for (auto& c : r) c *= s;
    trim(r);
    return r;
}


inline std::optional<ZPoly> divexact_schoolbook(const ZPoly& a, const ZPoly& c);

/// a / c by one big-integer division of Kronecker images at 2^(64 L).
/// If c | a then C(2^64L) | A(2^64L), so a nonzero remainder refutes
/// divisibility. Conversely the unpacked quotient q is certified without a
/// multiplication: when every coefficient of q*c and of a lies strictly
/// inside the balanced slot range, evaluation is injective on both, and
/// q*c and a agree at 2^(64 L) by construction.
inline std::optional<ZPoly> divexact_kronecker(const ZPoly& a, const ZPoly& c) {
    const std::size_t bits = detail::max_bits(a) + a.size() + 2 * GMP_NUMB_BITS;
    const std::size_t limbs = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
    BigInt av = detail::kronecker_eval(a, limbs);
    BigInt cv = detail::kronecker_eval(c, limbs);
    BigInt qv, rv;
    mpz_tdiv_qr(qv.get_mpz_t(), rv.get_mpz_t(), av.get_mpz_t(), cv.get_mpz_t());
    if (sgn(rv) != 0) return std::nullopt;
    const std::size_t qlen = a.size() - c.size() + 1;
    ZPoly q = detail::kronecker_unpack_signed(qv, limbs, qlen);
    const std::size_t slot = limbs * GMP_NUMB_BITS - 1;
    const std::size_t prod_bits = detail::max_bits(q) + detail::max_bits(c) +
                                  mpz_sizeinbase(BigInt(static_cast<unsigned long>(std::min(qlen, c.size()))).get_mpz_t(), 2);
    if (q.size() != qlen || prod_bits >= slot || detail::max_bits(a) >= slot) return divexact_schoolbook(a, c);
    return q;
}

/// a / c when c divides a over Z, nullopt otherwise.
inline std::optional<ZPoly> divexact(const ZPoly& a, const ZPoly& c) {
    if (c.empty()) throw DomainError("polynomial division by zero");
    if (a.empty()) return ZPoly{};
    if (a.size() < c.size()) return std::nullopt;
    if (c.size() >= 12 && a.size() - c.size() >= 11) return divexact_kronecker(a, c);
    return divexact_schoolbook(a, c);
}

inline std::optional<ZPoly> divexact_schoolbook(const ZPoly& a, const ZPoly& c) {
    if (c.empty()) throw DomainError("polynomial division by zero");
    if (a.empty()) return ZPoly{};
    if (a.size() < c.size()) return std::nullopt;
    const std::size_t m = c.size() - 1;
    const BigInt& lc = c.back();
    ZPoly r(a);
    ZPoly q(a.size() - m);
    for (std::size_t k = q.size(); k-- > 0;) {
        BigInt& top = r[k + m];
        if (sgn(top) == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
        mpz_srcptr qk = q[k].get_mpz_t();
        for (std::size_t i = 0; i < m; ++i) mpz_submul(r[k + i].get_mpz_t(), qk, c[i].get_mpz_t());
        top = 0;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (sgn(r[i]) != 0) return std::nullopt;
    }
    trim(q);
    return q;
}

inline Polynomial<Zp> reduce(const ZPoly& a, std::uint64_t p) {
    std::vector<Zp> v;
    v.reserve(a.size());
    for (const auto& c : a) v.emplace_back(mpz_fdiv_ui(c.get_mpz_t(), p), p);
    return Polynomial<Zp>(std::move(v));
}

struct GcdResult {
    ZPoly gcd;          // primitive, positive lead
    ZPoly cofactor_a;   // a / gcd
    ZPoly cofactor_b;   // b / gcd
};

/// gcd of two nonzero primitive integer polynomials by reduction modulo
/// word-sized primes, Chinese remaindering until the image stabilizes, and
/// trial division to certify the candidate.
inline GcdResult gcd_modular(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) throw DomainError("gcd_modular expects nonzero inputs");
    if (a.size() == 1 || b.size() == 1) return {ZPoly{BigInt(1)}, a, b};
    BigInt gamma;
    mpz_gcd(gamma.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());

    PrimeSource primes(0x9e3779b97f4a7c15ULL);
    ZPoly h;  // image of gamma * monic gcd, symmetric residues mod `modulus`
    BigInt modulus = 1;
    long best = LONG_MAX;
    for (;;) {
        std::uint64_t p = primes.next();
        if (mpz_fdiv_ui(a.back().get_mpz_t(), p) == 0 || mpz_fdiv_ui(b.back().get_mpz_t(), p) == 0) continue;
        Polynomial<Zp> g = euclid_gcd(reduce(a, p), reduce(b, p));
        long d = g.degree();
        if (d == 0) return {ZPoly{BigInt(1)}, a, b};
        if (d > best) continue;
        if (d < best) {
            // the gcd image has full degree: try the smaller input as the gcd
            const bool a_small = a.size() <= b.size();
            const ZPoly& s = a_small ? a : b;
            if (d == degree(s)) {
                ZPoly cand = primitive(s);
                if (auto q = divexact(a_small ? b : a, cand)) {
                    auto one = ZPoly{sgn(s.back()) < 0 ? BigInt(-1) : BigInt(1)};
                    return a_small ? GcdResult{std::move(cand), std::move(one), std::move(*q)}
                                   : GcdResult{std::move(cand), std::move(*q), std::move(one)};
                }
            }
        }
        g = g * Zp(mpz_fdiv_ui(gamma.get_mpz_t(), p), p);
        if (d < best) {
            best = d;
            h.assign(g.size(), BigInt(0));
            for (std::size_t i = 0; i < g.size(); ++i) {
                std::uint64_t v = g.coeffs()[i].value();
                if (v > p / 2) h[i] = -static_cast<long>(p - v);
                else h[i] = static_cast<unsigned long>(v);
            }
            modulus = static_cast<unsigned long>(p);
            continue;
        }
        Zp minv = Zp(mpz_fdiv_ui(modulus.get_mpz_t(), p), p).inverse();
        bool changed = false;
        for (std::size_t i = 0; i < h.size(); ++i) {
            Zp cur(mpz_fdiv_ui(h[i].get_mpz_t(), p), p);
            Zp t = (g[i] - cur) * minv;
            if (t.is_zero()) continue;
            changed = true;
            if (t.value() > p / 2) mpz_submul_ui(h[i].get_mpz_t(), modulus.get_mpz_t(), static_cast<unsigned long>(p - t.value()));
            else mpz_addmul_ui(h[i].get_mpz_t(), modulus.get_mpz_t(), static_cast<unsigned long>(t.value()));
        }
        modulus *= static_cast<unsigned long>(p);
        if (changed) continue;

        ZPoly cand = primitive(h);
        auto qa = divexact(a, cand);
        if (!qa) continue;
        auto qb = divexact(b, cand);
        if (!qb) continue;
        return {std::move(cand), std::move(*qa), std::move(*qb)};
    }
}

/// lc(b)^(deg a - deg b + 1) * a mod b over Z.
inline ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
    const std::size_t m = b.size() - 1;
    const BigInt& lc = b.back();
    long e = static_cast<long>(a.size()) - static_cast<long>(b.size()) + 1;
    while (!a.empty() && a.size() >= b.size()) {
        BigInt top = a.back();
        std::size_t shift = a.size() - 1 - m;
        for (auto& c : a) c *= lc;
        for (std::size_t i = 0; i <= m; ++i) mpz_submul(a[shift + i].get_mpz_t(), top.get_mpz_t(), b[i].get_mpz_t());
        trim(a);
        --e;
    }
    if (e > 0) {
        BigInt f;
        mpz_pow_ui(f.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& c : a) c *= f;
    }
    return a;
}

/// gcd by the subresultant polynomial remainder sequence; primitive result
/// with positive leading coefficient. Independent of gcd_modular.
inline ZPoly gcd_subresultant(ZPoly a, ZPoly b) {
    trim(a);
    trim(b);
    if (a.empty() && b.empty()) throw DomainError("gcd(0, 0)");
    if (a.empty()) return primitive(b);
    if (b.empty()) return primitive(a);
    if (a.size() < b.size()) std::swap(a, b);
    a = primitive(a);
    b = primitive(b);
    BigInt g = 1, h = 1;
    for (;;) {
        const long delta = static_cast<long>(a.size()) - static_cast<long>(b.size());
        ZPoly r = pseudo_remainder(a, b);
        if (r.empty()) return primitive(b);
        if (r.size() == 1) return ZPoly{BigInt(1)};
        a = std::move(b);
        BigInt hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
        BigInt div = g * hd;
        for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
        b = std::move(r);
        g = a.back();
        // h <- g^delta / h^(delta - 1)
        if (delta > 0) {
            BigInt gd, hd1;
            mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
            mpz_pow_ui(hd1.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd1.get_mpz_t());
        }
    }
}

inline Polynomial<BigRational> multiply_rational(const Polynomial<BigRational>& a, const Polynomial<BigRational>& b) {
    Split sa = split(a), sb = split(b);
    return join(sa.content * sb.content, mul(sa.prim, sb.prim));
}

}  // namespace dpint::zpoly
