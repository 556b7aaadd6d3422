#pragma once

// Iteration over the function field Q(z): degree sequences, cumulative
// degrees, entropy estimates and local-order traces. A two-prime modular
// route gives the same degrees far more cheaply.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coefficient_family.hpp"
#include "fit.hpp"

namespace dpint {

/// y_{n+1} = (a y^2 + b y + c) / y^2 - y_{n-1} over F(z), with y = y_n.
template <class F>
RationalFunction<F> field_step(const RationalFunction<F>& prev, const RationalFunction<F>& y, const F& a,
                               const F& b, const F& c) {
    using Poly = Polynomial<F>;
    const Poly& N = y.num();
    const Poly& D = y.den();
    Poly N2 = N * N;
    Poly num;
    if (!a.is_zero()) num = num + N2 * a;
    if (!b.is_zero()) num = num + (N * D) * b;
    if (!c.is_zero()) num = num + (D * D) * c;
    // with c != 0 any common factor of num and N^2 would divide D
    RationalFunction<F> t = c.is_zero() ? RationalFunction<F>(num, N2) : RationalFunction<F>::from_coprime(num, N2);
    return t - prev;
}

struct FieldOrbit {
    long start_index = 0;
    std::vector<QFunc> iterates;
    std::vector<long> degrees;

    long last_index() const { return start_index + static_cast<long>(iterates.size()) - 1; }
};

/// Seeds at indices start, start+1; then `count` steps, the step producing
/// y_{n+1} using the coefficients at n.
inline FieldOrbit iterate_field(const CoefficientFamily& fam, const QFunc& y0, const QFunc& y1, long count,
                                long start_index = 0) {
    if (count < 0) throw DomainError("negative step count");
    FieldOrbit orbit;
    orbit.start_index = start_index;
    orbit.iterates = {y0, y1};
    orbit.degrees = {y0.degree(), y1.degree()};
    for (long s = 0; s < count; ++s) {
        const long n = start_index + 1 + s;
        const QFunc& y = orbit.iterates.back();
        if (y.is_zero()) throw SingularOrbitError(n, "iterate vanishes identically; the next step is undefined");
        QFunc next = field_step(orbit.iterates[orbit.iterates.size() - 2], y, fam.a_at(n), fam.b_at(n), fam.c_at(n));
        orbit.degrees.push_back(next.degree());
        orbit.iterates.push_back(std::move(next));
    }
    return orbit;
}

/// Recomputes y_{n+1} + y_{n-1} - (a y^2 + b y + c) / y^2 with generic
/// rational-function arithmetic and checks that it vanishes at every step.
inline bool verify_step_identity(const CoefficientFamily& fam, const FieldOrbit& orbit) {
    for (std::size_t i = 1; i + 1 < orbit.iterates.size(); ++i) {
        const long n = orbit.start_index + static_cast<long>(i);
        const QFunc& y = orbit.iterates[i];
        QFunc a(fam.a_at(n)), b(fam.b_at(n)), c(fam.c_at(n));
        QFunc rhs = (a * y * y + b * y + c) / (y * y);
        if (!(orbit.iterates[i + 1] + orbit.iterates[i - 1] - rhs).is_zero()) return false;
    }
    return true;
}

inline std::vector<long> cumulative_degree(const std::vector<long>& degrees) {
    std::vector<long> out;
    out.reserve(degrees.size());
    long acc = 0;
    for (long d : degrees) out.push_back(acc += d);
    return out;
}
inline std::vector<long> cumulative_degree(const FieldOrbit& orbit) { return cumulative_degree(orbit.degrees); }

inline constexpr double kDefaultTailFraction = 0.5;

struct EntropyEstimate {
    double slope = 0;           // least-squares slope of log d_j against j
    double endpoint_slope = 0;  // log(d_last / d_first) / (last - first)
    long tail_first = 0;        // tail window, as orbit indices
    long tail_last = 0;
    std::vector<long> cumulative;
};

/// Entropy estimate from degrees d_j, j = start_index + i, fitted over the
/// explicit index window [first, last].
inline EntropyEstimate entropy_over(long start_index, const std::vector<long>& degrees, long first, long last) {
    const long end = start_index + static_cast<long>(degrees.size()) - 1;
    if (first < start_index || last > end || last - first + 1 < 4) {
        throw DomainError("entropy window needs at least 4 iterates inside the orbit");
    }
    std::vector<double> xs, ys;
    for (long j = first; j <= last; ++j) {
        long d = degrees[static_cast<std::size_t>(j - start_index)];
        if (d < 1) throw DomainError("entropy window contains a constant iterate (index " + std::to_string(j) + ")");
        xs.push_back(static_cast<double>(j));
        ys.push_back(std::log(static_cast<double>(d)));
    }
    EntropyEstimate e;
    e.slope = linear_fit(xs, ys).slope;
    e.endpoint_slope = (ys.back() - ys.front()) / static_cast<double>(last - first);
    e.tail_first = first;
    e.tail_last = last;
    e.cumulative = cumulative_degree(degrees);
    return e;
}

/// Fits the last ceil(tail_fraction * N) of the N iterates.
inline EntropyEstimate entropy_estimate(long start_index, const std::vector<long>& degrees,
                                        double tail_fraction = kDefaultTailFraction) {
    if (!(tail_fraction > 0 && tail_fraction <= 1)) throw DomainError("tail_fraction must lie in (0, 1]");
    const long n = static_cast<long>(degrees.size());
    const long len = static_cast<long>(std::ceil(tail_fraction * static_cast<double>(n) - 1e-9));
    const long last = start_index + n - 1;
    return entropy_over(start_index, degrees, last - len + 1, last);
}
inline EntropyEstimate entropy_estimate(const FieldOrbit& orbit, double tail_fraction = kDefaultTailFraction) {
    return entropy_estimate(orbit.start_index, orbit.degrees, tail_fraction);
}

/// ord_point(y_j) for each iterate; nullopt marks an identically-zero iterate.
inline std::vector<std::optional<long>> local_order_trace(const FieldOrbit& orbit,
                                                          const ProjectivePoint<BigRational>& point) {
    std::vector<std::optional<long>> out;
    out.reserve(orbit.iterates.size());
    for (const auto& y : orbit.iterates) {
        if (y.is_zero()) out.emplace_back(std::nullopt);
        else out.emplace_back(y.local_order(point));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Modular route

using ZpFunc = RationalFunction<Zp>;

namespace detail {

/// Image of f mod p, or nullopt when p divides a denominator or a leading
/// coefficient, or the reduced numerator and denominator acquire a common factor.
inline std::optional<ZpFunc> reduce_function(const QFunc& f, std::uint64_t p) {
    auto red = [p](const QPoly& q) -> std::optional<Polynomial<Zp>> {
        std::vector<Zp> v;
        v.reserve(q.size());
        for (const auto& c : q.coeffs()) {
            if (mpz_fdiv_ui(c.den_ref().get_mpz_t(), p) == 0) return std::nullopt;
            v.push_back(Zp::from_rational(c, p));
        }
        Polynomial<Zp> r(std::move(v));
        if (r.degree() != q.degree()) return std::nullopt;
        return r;
    };
    auto n = red(f.num());
    auto d = red(f.den());
    if (!n || !d) return std::nullopt;
    if (f.is_zero()) return ZpFunc();
    ZpFunc r(*n, *d);
    if (r.num().degree() != f.num().degree() || r.den().degree() != f.den().degree()) return std::nullopt;
    return r;
}

inline std::optional<Zp> reduce_scalar(const BigRational& x, std::uint64_t p) {
    if (mpz_fdiv_ui(x.den_ref().get_mpz_t(), p) == 0) return std::nullopt;
    return Zp::from_rational(x, p);
}

/// Degree sequence of the orbit reduced mod p; nullopt when p is unusable
/// or the reduced orbit hits zero.
inline std::optional<std::vector<long>> degrees_mod_p(const CoefficientFamily& fam, const QFunc& y0, const QFunc& y1,
                                                      long count, long start_index, std::uint64_t p) {
    auto r0 = reduce_function(y0, p);
    auto r1 = reduce_function(y1, p);
    if (!r0 || !r1) return std::nullopt;
    std::vector<long> deg{r0->degree(), r1->degree()};
    ZpFunc prev = *r0, y = *r1;
    for (long s = 0; s < count; ++s) {
        const long n = start_index + 1 + s;
        if (y.is_zero()) return std::nullopt;
        auto a = reduce_scalar(fam.a_at(n), p), b = reduce_scalar(fam.b_at(n), p), c = reduce_scalar(fam.c_at(n), p);
        if (!a || !b || !c) return std::nullopt;
        ZpFunc next = field_step(prev, y, *a, *b, *c);
        deg.push_back(next.degree());
        prev = std::move(y);
        y = std::move(next);
    }
    return deg;
}

}  // namespace detail

/// Degrees via reduction modulo random 31-bit primes. Primes that
/// fail to reduce are replaced; the result is accepted once two primes agree.
/// A reduced orbit can only lose degree, so agreement of independent random
/// primes certifies the exact degrees with overwhelming probability.
inline std::vector<long> degrees_modular(const CoefficientFamily& fam, const QFunc& y0, const QFunc& y1, long count,
                                         long start_index = 0, std::uint64_t seed = 0x5eed) {
    if (count < 0) throw DomainError("negative step count");
    if (y1.is_zero() && count > 0) throw SingularOrbitError(start_index + 1, "iterate vanishes identically");
    for (long n = start_index + 1; n <= start_index + count; ++n) {
        (void)fam.a_at(n), (void)fam.b_at(n), (void)fam.c_at(n);  // surface poles as PoleError
    }
    PrimeSource primes(seed, 31);
    std::optional<std::vector<long>> first;
    int failures = 0;
    for (int attempt = 0; attempt < 16; ++attempt) {
        auto d = detail::degrees_mod_p(fam, y0, y1, count, start_index, primes.next());
        if (!d) {
            ++failures;
            continue;
        }
        if (first && *first == *d) return *d;
        // on disagreement keep the lexicographically larger run; an unlucky prime
        // can only lower degrees
        if (!first || *d > *first) first = std::move(d);
    }
    if (failures >= 8) throw SingularOrbitError(start_index + count, "modular orbits repeatedly degenerate");
    throw DomainError("modular degree computation did not stabilize");
}

}  // namespace dpint
