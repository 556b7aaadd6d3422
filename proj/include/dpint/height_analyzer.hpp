#pragma once

// Iteration over Q: logarithmic heights, growth classification, the
// place-dependent length scale eps_n, and empirical checks of the blow-up
// and confinement estimates on concrete orbit segments.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coefficient_family.hpp"
#include "exact_arith.hpp"
#include "fit.hpp"

namespace dpint {

struct RationalOrbit {
    long start_index = 0;
    std::vector<BigRational> iterates;
    std::vector<double> heights;
    std::vector<double> coeff_heights;  // h(a_n) + h(b_n) + h(c_n) at each iterate index

    long last_index() const { return start_index + static_cast<long>(iterates.size()) - 1; }
    const BigRational& at(long n) const { return iterates[static_cast<std::size_t>(n - start_index)]; }
    bool contains(long n) const { return n >= start_index && n <= last_index(); }
};

inline double coefficient_height(const CoefficientFamily& fam, long n) {
    return log_height(fam.a_at(n)) + log_height(fam.b_at(n)) + log_height(fam.c_at(n));
}

/// y_{n+1} = a_n + b_n / y_n + c_n / y_n^2 - y_{n-1} over Q.
inline BigRational rational_step(const BigRational& prev, const BigRational& y, const BigRational& a,
                                 const BigRational& b, const BigRational& c) {
    BigRational u = y.inverse();
    return a + (b + c * u) * u - prev;
}

/// Seeds y_{r0}, y_{r0+1}, then `count` steps.
inline RationalOrbit iterate_rationals(const CoefficientFamily& fam, long r0, const BigRational& y_r0,
                                       const BigRational& y_r0plus1, long count) {
    if (count < 0) throw DomainError("negative step count");
    RationalOrbit orbit;
    orbit.start_index = r0;
    orbit.iterates = {y_r0, y_r0plus1};
    for (long s = 0; s < count; ++s) {
        const long n = r0 + 1 + s;
        const BigRational& y = orbit.iterates.back();
        if (y.is_zero()) throw SingularOrbitError(n, "iterate is zero; the next step divides by it");
        orbit.iterates.push_back(
            rational_step(orbit.iterates[orbit.iterates.size() - 2], y, fam.a_at(n), fam.b_at(n), fam.c_at(n)));
    }
    for (std::size_t i = 0; i < orbit.iterates.size(); ++i) {
        orbit.heights.push_back(log_height(orbit.iterates[i]));
        orbit.coeff_heights.push_back(coefficient_height(fam, r0 + static_cast<long>(i)));
    }
    return orbit;
}

/// Rechecks y_{n+1} + y_{n-1} = (a y^2 + b y + c) / y^2 at every interior index.
inline bool verify_step_identity(const CoefficientFamily& fam, const RationalOrbit& orbit) {
    for (std::size_t i = 1; i + 1 < orbit.iterates.size(); ++i) {
        const long n = orbit.start_index + static_cast<long>(i);
        const BigRational& y = orbit.iterates[i];
        BigRational rhs = (fam.a_at(n) * y * y + fam.b_at(n) * y + fam.c_at(n)) / (y * y);
        if (orbit.iterates[i + 1] + orbit.iterates[i - 1] != rhs) return false;
    }
    return true;
}

inline std::vector<double> cumulative_height(const std::vector<double>& heights) {
    std::vector<double> out;
    out.reserve(heights.size());
    double acc = 0;
    for (double h : heights) out.push_back(acc += h);
    return out;
}
inline std::vector<double> cumulative_height(const RationalOrbit& orbit) { return cumulative_height(orbit.heights); }

/// (sum of coefficient heights) / (sum of solution heights) for each prefix;
/// nullopt where the solution heights still sum to zero.
inline std::vector<std::optional<double>> admissibility_ratio(const RationalOrbit& orbit) {
    std::vector<std::optional<double>> out;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < orbit.heights.size(); ++i) {
        num += orbit.coeff_heights[i];
        den += orbit.heights[i];
        if (den > 0) out.emplace_back(num / den);
        else out.emplace_back(std::nullopt);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Length scales

inline constexpr double kDefaultDelta = 0.25;

inline double log_kappa(const Place& v) { return v.is_infinite() ? std::log(3.0) : 0.0; }

namespace detail {

inline void check_delta(double delta) {
    if (!(delta > 0 && delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
}

inline double log_abs_or_minus_inf(const BigRational& x, const Place& v) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    return log_abs_at_place(x, v);
}

inline double log_abs_inverse(const BigRational& x, const Place& v, const char* what) {
    if (x.is_zero()) throw DomainError(std::string(what) + " vanishes; its inverse absolute value is undefined");
    return -log_abs_at_place(x, v);
}

}  // namespace detail

/// log eps_n where eps_n^(-delta) = kappa_p max{1, |c_n|^-1, |b_n|, |a_n|,
/// |c_{n+1}|, |c_{n-1}|, |b_{n+1}|, |b_{n-1}|, |a_{n+1}|^-1, |a_{n-1}|^-1}.
inline double log_epsilon_threshold(const CoefficientFamily& fam, long n, const Place& v, double delta = kDefaultDelta) {
    detail::check_delta(delta);
    double m = 0;  // log 1
    auto take = [&m](double x) { m = std::max(m, x); };
    take(detail::log_abs_inverse(fam.c_at(n), v, "c_n"));
    take(detail::log_abs_or_minus_inf(fam.b_at(n), v));
    take(detail::log_abs_or_minus_inf(fam.a_at(n), v));
    take(detail::log_abs_or_minus_inf(fam.c_at(n + 1), v));
    take(detail::log_abs_or_minus_inf(fam.c_at(n - 1), v));
    take(detail::log_abs_or_minus_inf(fam.b_at(n + 1), v));
    take(detail::log_abs_or_minus_inf(fam.b_at(n - 1), v));
    take(detail::log_abs_inverse(fam.a_at(n + 1), v, "a_{n+1}"));
    take(detail::log_abs_inverse(fam.a_at(n - 1), v, "a_{n-1}"));
    return -(log_kappa(v) + m) / delta;
}

inline double epsilon_threshold(const CoefficientFamily& fam, long n, const Place& v, double delta = kDefaultDelta) {
    return std::exp(log_epsilon_threshold(fam, n, v, delta));
}

/// The a = 0 analogue used by the confinement estimates: the same formula
/// with every a-term removed.
inline double log_epsilon_threshold_a0(const CoefficientFamily& fam, long k, const Place& v,
                                       double delta = kDefaultDelta) {
    detail::check_delta(delta);
    double m = 0;
    auto take = [&m](double x) { m = std::max(m, x); };
    take(detail::log_abs_inverse(fam.c_at(k), v, "c_k"));
    take(detail::log_abs_or_minus_inf(fam.b_at(k), v));
    take(detail::log_abs_or_minus_inf(fam.c_at(k + 1), v));
    take(detail::log_abs_or_minus_inf(fam.c_at(k - 1), v));
    take(detail::log_abs_or_minus_inf(fam.b_at(k + 1), v));
    take(detail::log_abs_or_minus_inf(fam.b_at(k - 1), v));
    return -(log_kappa(v) + m) / delta;
}

// ---------------------------------------------------------------------------
// Lemma checks

enum class Branch { forward, backward, none };

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::forward: return "forward";
        case Branch::backward: return "backward";
        default: return "n/a";
    }
}

struct LemmaCheckRecord {
    long index = 0;
    Place place = Place::infinity();
    bool premise_held = false;
    bool conclusion_held = false;  // meaningful only when premise_held
    Branch which_branch = Branch::none;
    /// For the confinement estimates: outcome of each numbered conclusion.
    std::array<std::optional<bool>, 4> parts;
    /// The compared quantities, as natural logs of absolute values.
    std::map<std::string, double> details;
};

namespace detail {

// a <= b up to floating noise in the logs
inline bool log_le(double a, double b) {
    if (std::isinf(a) && a < 0) return true;
    return a <= b + 1e-9 * (1.0 + std::fabs(b));
}
// a < b with a margin, so that rounding never manufactures a strict inequality
inline bool log_lt(double a, double b) {
    if (std::isinf(a) && a < 0) return !(std::isinf(b) && b < 0);
    return a < b - 1e-9 * (1.0 + std::fabs(b));
}

inline std::optional<double> try_log_eps(const CoefficientFamily& fam, long n, const Place& v, double delta) {
    try {
        return log_epsilon_threshold(fam, n, v, delta);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

}  // namespace detail

/// For every orbit index m where eps_m is defined, tests |y_m| < eps_m and,
/// if so, whether
///   |y_{m+1}| >= |y_m|^-(2-delta) and |y_{m+2}| >= eps_{m+2}      (forward)
/// or the same with m-1, m-2                                      (backward).
/// A branch reaching outside the orbit counts as not verified.
inline std::vector<LemmaCheckRecord> verify_blowup_lemma(const RationalOrbit& orbit, const CoefficientFamily& fam,
                                                         const Place& v, double delta = kDefaultDelta) {
    detail::check_delta(delta);
    if (fam.a().is_zero()) throw DomainError("the blow-up estimate assumes a not identically zero");
    std::vector<LemmaCheckRecord> out;
    for (long m = orbit.start_index; m <= orbit.last_index(); ++m) {
        auto eps_m = detail::try_log_eps(fam, m, v, delta);
        if (!eps_m) continue;
        LemmaCheckRecord rec;
        rec.index = m;
        rec.place = v;
        const double ly = detail::log_abs_or_minus_inf(orbit.at(m), v);
        rec.details["log|y_m|"] = ly;
        rec.details["log eps_m"] = *eps_m;
        rec.premise_held = detail::log_lt(ly, *eps_m);
        if (rec.premise_held) {
            auto branch = [&](long step, const char* tag) -> bool {
                const long n1 = m + step, n2 = m + 2 * step;
                if (!orbit.contains(n1) || !orbit.contains(n2)) return false;
                auto eps2 = detail::try_log_eps(fam, n2, v, delta);
                if (!eps2) return false;
                const double l1 = detail::log_abs_or_minus_inf(orbit.at(n1), v);
                const double l2 = detail::log_abs_or_minus_inf(orbit.at(n2), v);
                const std::string t(tag);
                rec.details["log|y_" + t + "1|"] = l1;
                rec.details["log|y_" + t + "2|"] = l2;
                rec.details["log eps_" + t + "2"] = *eps2;
                return detail::log_le(-(2.0 - delta) * ly, l1) && detail::log_le(*eps2, l2);
            };
            const bool fwd = branch(1, "m+");
            const bool bwd = branch(-1, "m-");
            rec.conclusion_held = fwd || bwd;
            rec.which_branch = fwd ? Branch::forward : (bwd ? Branch::backward : Branch::none);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

/// For every k with y_{k-1}, ..., y_{k+3} in the orbit, |y_{k-1}| <= |y_k|^(-1/2)
/// and |y_k| < eps_k (a = 0 variant), evaluates the remainders
///   A_k = y_{k+1} - c_k / y_k^2 - b_k / y_k
///   B_k = y_{k+2} + y_k - (b_{k+1} / c_k) y_k^2
///   C_k = y_{k+3} - (c_{k+2} - c_k) / y_{k+2}^2 - (b_{k+2} - 2 (c_{k+2} / c_k) b_{k+1} + b_k) / y_{k+2}
/// exactly and tests the four stated estimates. Only premise-satisfying
/// indices produce records.
inline std::vector<LemmaCheckRecord> verify_confinement_lemma(const RationalOrbit& orbit, const CoefficientFamily& fam,
                                                              const Place& v, double delta = kDefaultDelta) {
    detail::check_delta(delta);
    if (!fam.a().is_zero()) throw DomainError("the confinement estimates assume a identically zero");
    std::vector<LemmaCheckRecord> out;
    const bool archimedean = v.is_infinite();
    for (long k = orbit.start_index + 1; k + 3 <= orbit.last_index(); ++k) {
        double eps_k;
        try {
            eps_k = log_epsilon_threshold_a0(fam, k, v, delta);
        } catch (const DomainError&) {
            continue;
        }
        const BigRational& yk = orbit.at(k);
        const double lk = detail::log_abs_or_minus_inf(yk, v);
        const double lkm1 = detail::log_abs_or_minus_inf(orbit.at(k - 1), v);
        if (!(detail::log_le(lkm1, -0.5 * lk) && detail::log_lt(lk, eps_k))) continue;

        LemmaCheckRecord rec;
        rec.index = k;
        rec.place = v;
        rec.premise_held = true;
        rec.details["log|y_k|"] = lk;
        rec.details["log eps_k"] = eps_k;

        const BigRational bk = fam.b_at(k), ck = fam.c_at(k);
        const BigRational bk1 = fam.b_at(k + 1);
        const BigRational bk2 = fam.b_at(k + 2), ck2 = fam.c_at(k + 2);
        const BigRational& yk2 = orbit.at(k + 2);
        const BigRational uk = yk.inverse(), uk2 = yk2.inverse();

        const BigRational A = orbit.at(k + 1) - ck * uk * uk - bk * uk;
        const BigRational B = yk2 + yk - (bk1 / ck) * yk * yk;
        const BigRational dc = ck2 - ck;
        const BigRational C = orbit.at(k + 3) - dc * uk2 * uk2 - (bk2 - BigRational(2) * (ck2 / ck) * bk1 + bk) * uk2;

        const double lA = detail::log_abs_or_minus_inf(A, v);
        const double lB = detail::log_abs_or_minus_inf(B, v);
        const double lC = detail::log_abs_or_minus_inf(C, v);
        const double lk2 = detail::log_abs_or_minus_inf(yk2, v);
        const double ldc = detail::log_abs_or_minus_inf(dc / ck, v);
        rec.details["log|A_k|"] = lA;
        rec.details["log|B_k|"] = lB;
        rec.details["log|C_k|"] = lC;
        rec.details["log|y_k+2|"] = lk2;

        rec.parts[0] = detail::log_le(lA, -0.5 * lk);
        rec.parts[1] = detail::log_le(lB, (3.0 - 4.0 * delta) * lk);
        const double t1 = ldc + (1.0 - delta) * lk2;  // -inf when c_{k+2} = c_k
        const double t2 = -0.5 * lk2;
        double bound;
        if (archimedean) {
            // log(2 e^t1 + 3 e^t2)
            const double x = std::log(2.0) + t1, y = std::log(3.0) + t2;
            const double hi = std::max(x, y);
            bound = std::isinf(x) ? y : hi + std::log1p(std::exp(std::min(x, y) - hi));
        } else {
            bound = std::max(t1, t2);
        }
        rec.details["log bound C_k"] = bound;
        rec.parts[2] = detail::log_le(lC, bound);
        if (archimedean) {
            const BigRational ratio = (yk2 / yk).abs();
            rec.parts[3] = ratio > BigRational(16, 25) && ratio < BigRational(36, 25);
        } else {
            rec.parts[3] = padic_valuation(yk2, v) == padic_valuation(yk, v);
        }
        rec.conclusion_held = *rec.parts[0] && *rec.parts[1] && *rec.parts[2] && *rec.parts[3];
        out.push_back(std::move(rec));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Growth classification

enum class GrowthModel { polynomial, exponential };

inline const char* to_string(GrowthModel m) { return m == GrowthModel::polynomial ? "polynomial" : "exponential"; }

struct GrowthReport {
    GrowthModel model = GrowthModel::exponential;
    double poly_exponent = 0;  // slope of log sum h against log r
    double exp_rate = 0;       // slope of log h(y_n) against n
    double poly_residual = 0;  // 1 - R^2 of each fit
    double exp_residual = 0;
    long window_first = 0;  // orbit indices used by both fits
    long window_last = 0;
};

inline std::size_t warmup_length(std::size_t n) {
    return std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(n))));
}

/// Fits sum_{n <= r} h ~ K r^rho (r counted from the first iterate) and
/// h(y_n) ~ K' e^(lambda n) after discarding a warm-up prefix, and keeps the
/// model with the strictly smaller normalized residual (exponential on a tie).
inline GrowthReport classify_growth(long start_index, const std::vector<double>& heights) {
    const std::size_t n = heights.size();
    const std::size_t skip = warmup_length(n);
    if (n < skip + 12) throw DomainError("growth classification needs at least 12 points after warm-up");
    std::vector<double> cum = cumulative_height(heights);
    std::vector<double> px, py, ex, ey;
    for (std::size_t i = skip; i < n; ++i) {
        if (cum[i] > 0) {
            px.push_back(std::log(static_cast<double>(i + 1)));
            py.push_back(std::log(cum[i]));
        }
        if (heights[i] > 0) {
            ex.push_back(static_cast<double>(start_index) + static_cast<double>(i));
            ey.push_back(std::log(heights[i]));
        }
    }
    if (px.size() < 12 || ey.size() < 12) throw DomainError("degenerate heights (too many zero heights)");
    LinearFit pf = linear_fit(px, py);
    LinearFit ef = linear_fit(ex, ey);
    GrowthReport r;
    r.poly_exponent = pf.slope;
    r.exp_rate = ef.slope;
    r.poly_residual = pf.normalized_residual();
    r.exp_residual = ef.normalized_residual();
    r.model = r.poly_residual < r.exp_residual ? GrowthModel::polynomial : GrowthModel::exponential;
    r.window_first = start_index + static_cast<long>(skip);
    r.window_last = start_index + static_cast<long>(n) - 1;
    return r;
}
inline GrowthReport classify_growth(const RationalOrbit& orbit) { return classify_growth(orbit.start_index, orbit.heights); }

}  // namespace dpint
