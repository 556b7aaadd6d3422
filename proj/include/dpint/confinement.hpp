#pragma once

// Singularity confinement: start the recurrence at y_{j0-1} = k (free),
// y_{j0} = eps, expand the following iterates as Laurent series in eps and
// ask whether y_{j0+3} stays finite. Independently, evaluate the closed-form
// residual conditions
//     a_{j0+1},  c_{j0+2} - c_{j0},  b_{j0+2} - 2 b_{j0+1} + b_{j0},
// whose joint vanishing is equivalent to confinement.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "coefficient_family.hpp"
#include "laurent.hpp"

namespace dpint {

enum class LaurentVerdict { confined, unconfined, indeterminate };

inline const char* to_string(LaurentVerdict v) {
    switch (v) {
        case LaurentVerdict::confined: return "confined";
        case LaurentVerdict::unconfined: return "unconfined";
        default: return "indeterminate";
    }
}

/// The free initial value k as an element of Q(k).
inline QFunc free_parameter() { return QFunc(QPoly::variable(BigRational(1))); }

/// One step y_{n+1} = a_n + b_n / y_n + c_n / y_n^2 - y_{n-1} on series.
inline LaurentQk laurent_step(const LaurentQk& prev, const LaurentQk& y, const BigRational& a,
                              const BigRational& b, const BigRational& c) {
    LaurentQk u = y.inverse();
    // u * (b + c u) keeps the window of u; skip vanishing terms so they do not
    // shorten the precision of the sum
    LaurentQk inner = u * QFunc(c);
    if (!b.is_zero()) inner = inner + LaurentQk::constant(QFunc(b), u.window());
    LaurentQk r = u * inner;
    if (!a.is_zero()) r = r + LaurentQk::constant(QFunc(a), r.window());
    return r - prev;
}

/// y_{j0+1}, ..., y_{j0+steps} for the perturbed singular orbit
/// y_{j0-1} = k, y_{j0} = eps.
inline std::vector<LaurentQk> singular_orbit(const CoefficientFamily& fam, long j0, int steps,
                                             std::size_t window = kDefaultLaurentWindow) {
    if (steps < 0 || steps > 4) throw DomainError("singular_orbit supports 0..4 steps");
    if (fam.c_at(j0).is_zero()) throw DomainError("c vanishes at the base index " + std::to_string(j0));
    LaurentQk prev = LaurentQk::constant(free_parameter(), window);
    LaurentQk y = LaurentQk::monomial(QFunc(1), 1, window);
    std::vector<LaurentQk> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int s = 0; s < steps; ++s) {
        const long n = j0 + s;
        if (y.is_zero_to_window()) throw PrecisionExhausted("iterate " + std::to_string(n) + " vanishes to the window");
        LaurentQk next = laurent_step(prev, y, fam.a_at(n), fam.b_at(n), fam.c_at(n));
        prev = std::move(y);
        y = next;
        out.push_back(std::move(next));
    }
    return out;
}

struct ConfinementReport {
    long base_index = 0;
    LaurentVerdict laurent_verdict = LaurentVerdict::indeterminate;
    /// (a_{j0+1}, c_{j0+2} - c_{j0}, b_{j0+2} - 2 b_{j0+1} + b_{j0})
    std::array<BigRational, 3> residuals;
    /// eps-valuations of y_{j0}, ..., y_{j0+4}; nullopt where undetermined
    std::array<std::optional<long>, 5> orbit_valuations;
    std::size_t window_used = kDefaultLaurentWindow;

    bool residuals_vanish() const {
        return residuals[0].is_zero() && residuals[1].is_zero() && residuals[2].is_zero();
    }
    /// The two verdicts agree (vacuously true when the series verdict is indeterminate).
    bool cross_check_ok() const {
        if (laurent_verdict == LaurentVerdict::indeterminate) return true;
        return (laurent_verdict == LaurentVerdict::confined) == residuals_vanish();
    }
};

inline std::array<BigRational, 3> confinement_residuals(const CoefficientFamily& fam, long j0) {
    return {fam.a_at(j0 + 1), fam.c_at(j0 + 2) - fam.c_at(j0),
            fam.b_at(j0 + 2) - BigRational(2) * fam.b_at(j0 + 1) + fam.b_at(j0)};
}

namespace detail {

inline ConfinementReport confinement_attempt(const CoefficientFamily& fam, long j0, std::size_t window) {
    ConfinementReport rep;
    rep.base_index = j0;
    rep.window_used = window;
    rep.orbit_valuations[0] = 1;
    std::vector<LaurentQk> orbit;
    try {
        orbit = singular_orbit(fam, j0, 3, window);
    } catch (const PrecisionExhausted&) {
        return rep;
    }
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        if (!orbit[i].is_zero_to_window()) rep.orbit_valuations[i + 1] = orbit[i].valuation();
    }
    switch (orbit[2].limit_at_zero().kind) {
        case LaurentQk::LimitKind::finite: rep.laurent_verdict = LaurentVerdict::confined; break;
        case LaurentQk::LimitKind::infinite: rep.laurent_verdict = LaurentVerdict::unconfined; break;
        default: rep.laurent_verdict = LaurentVerdict::indeterminate; break;
    }
    // one step further for the valuation record only
    if (!orbit[2].is_zero_to_window()) {
        try {
            LaurentQk y4 = laurent_step(orbit[1], orbit[2], fam.a_at(j0 + 3), fam.b_at(j0 + 3), fam.c_at(j0 + 3));
            if (!y4.is_zero_to_window()) rep.orbit_valuations[4] = y4.valuation();
        } catch (const PrecisionExhausted&) {
        } catch (const PoleError&) {
        }
    }
    return rep;
}

}  // namespace detail

/// Runs the series cascade and the residual conditions at base index j0.
/// An indeterminate series verdict is retried once at twice the window.
inline ConfinementReport confinement_test(const CoefficientFamily& fam, long j0,
                                          std::size_t window = kDefaultLaurentWindow) {
    auto residuals = confinement_residuals(fam, j0);
    ConfinementReport rep = detail::confinement_attempt(fam, j0, window);
    if (rep.laurent_verdict == LaurentVerdict::indeterminate) rep = detail::confinement_attempt(fam, j0, 2 * window);
    rep.residuals = residuals;
    return rep;
}

enum class EquationForm { dP1, not_dP1 };

inline const char* to_string(EquationForm f) { return f == EquationForm::dP1 ? "dP1" : "not_dP1"; }

struct DP1Parameters {
    BigRational A, B, C;  // b_j = A j + B, c_j = C
};

struct ClassificationVerdict {
    EquationForm form = EquationForm::not_dP1;
    std::optional<DP1Parameters> parameters;
};

/// The three conditions as identities of rational functions in j.
struct ConfinementIdentities {
    bool a_vanishes = false;
    bool c_two_periodic = false;  // c(j+2) - c(j) == 0
    bool b_second_difference_vanishes = false;

    bool all() const { return a_vanishes && c_two_periodic && b_second_difference_vanishes; }
};

inline ConfinementIdentities confinement_identities(const CoefficientFamily& fam) {
    const BigRational one(1), two(2);
    ConfinementIdentities id;
    id.a_vanishes = fam.a().is_zero();
    id.c_two_periodic = (fam.c().shift(two) - fam.c()).is_zero();
    id.b_second_difference_vanishes = (fam.b().shift(two) - fam.b().shift(one) * two + fam.b()).is_zero();
    return id;
}

struct ConfinementScan {
    ClassificationVerdict verdict;
    ConfinementIdentities identities;
    std::vector<ConfinementReport> reports;
    std::vector<long> skipped;  // base indices with c_{j0} = 0
};

/// Tests every base index in [j_lo, j_hi] and decides the dP1 form from the
/// exact identities together with the per-index verdicts.
inline ConfinementScan confinement_scan(const CoefficientFamily& fam, long j_lo, long j_hi,
                                        std::size_t window = kDefaultLaurentWindow) {
    if (j_lo > j_hi) throw DomainError("empty scan range");
    ConfinementScan scan;
    scan.identities = confinement_identities(fam);
    bool all_confined = true;
    for (long j = j_lo; j <= j_hi; ++j) {
        if (fam.c_at(j).is_zero()) {
            scan.skipped.push_back(j);
            continue;
        }
        scan.reports.push_back(confinement_test(fam, j, window));
        if (scan.reports.back().laurent_verdict != LaurentVerdict::confined) all_confined = false;
    }
    if (all_confined && scan.identities.all()) {
        const QFunc& b = fam.b();
        const QFunc& c = fam.c();
        // a periodic rational function is constant; zero second difference means linear
        if (!c.is_constant() || !b.is_polynomial() || b.num().degree() > 1) {
            throw DomainError("identity check inconsistent with coefficient shape");
        }
        DP1Parameters p{b.num()[1], b.num()[0], c.constant_value()};
        scan.verdict = {EquationForm::dP1, p};
    }
    return scan;
}

}  // namespace dpint
