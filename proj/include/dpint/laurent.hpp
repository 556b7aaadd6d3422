#pragma once

// Truncated Laurent series in a small parameter eps.
//
// A series stores `window` coefficients starting at exponent `valuation`; it
// is known exactly modulo eps^(valuation + window). Relative precision is
// tracked pessimistically: products keep the smaller window, inversion keeps
// the window, and cancellation in sums shortens it.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational_function.hpp"

namespace dpint {

inline constexpr std::size_t kDefaultLaurentWindow = 8;

template <class F>
class TruncatedLaurent {
public:
    /// Exactly c * eps^k, tracked to `window` orders.
    static TruncatedLaurent monomial(const F& c, long k, std::size_t window = kDefaultLaurentWindow) {
        if (window == 0) throw DomainError("Laurent window must be at least 1");
        std::vector<F> v(window, zero_like(c));
        v[0] = c;
        return TruncatedLaurent(k, std::move(v));
    }
    static TruncatedLaurent constant(const F& c, std::size_t window = kDefaultLaurentWindow) {
        return monomial(c, 0, window);
    }
    /// Coefficients of eps^valuation, eps^(valuation+1), ...; the window is their count.
    static TruncatedLaurent from_coeffs(long valuation, std::vector<F> coeffs) {
        if (coeffs.empty()) throw DomainError("Laurent window must be at least 1");
        return TruncatedLaurent(valuation, std::move(coeffs));
    }

    /// Lowest tracked exponent; for a zero-to-window series the start of the window.
    long valuation() const { return val_; }
    std::size_t window() const { return c_.size(); }
    /// Exponent at which knowledge ends: the series is exact mod eps^precision().
    long precision() const { return val_ + static_cast<long>(c_.size()); }
    /// True when every tracked coefficient is zero, so the true valuation is unknown.
    bool is_zero_to_window() const { return zero_; }

    /// Coefficient of eps^k; zero below the valuation, PrecisionExhausted at or
    /// beyond precision().
    F coeff(long k) const {
        if (k >= precision()) throw PrecisionExhausted("coefficient of eps^" + std::to_string(k) + " is outside the window");
        if (k < val_) return zero_like(c_.front());
        return c_[static_cast<std::size_t>(k - val_)];
    }
    const std::vector<F>& coeffs() const { return c_; }

    friend TruncatedLaurent operator+(const TruncatedLaurent& f, const TruncatedLaurent& g) { return add(f, g, false); }
    friend TruncatedLaurent operator-(const TruncatedLaurent& f, const TruncatedLaurent& g) { return add(f, g, true); }
    friend TruncatedLaurent operator-(const TruncatedLaurent& f) {
        TruncatedLaurent r = f;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend TruncatedLaurent operator*(const TruncatedLaurent& f, const TruncatedLaurent& g) {
        const std::size_t w = std::min(f.window(), g.window());
        const long v = f.val_ + g.val_;
        std::vector<F> r(w, zero_like(f.c_.front()));
        if (!f.zero_ && !g.zero_) {
            for (std::size_t k = 0; k < w; ++k) {
                for (std::size_t i = 0; i <= k; ++i) {
                    if (f.c_[i].is_zero() || g.c_[k - i].is_zero()) continue;
                    r[k] += f.c_[i] * g.c_[k - i];
                }
            }
        }
        TruncatedLaurent out(v, std::move(r));
        return out;
    }

    friend TruncatedLaurent operator*(const TruncatedLaurent& f, const F& s) {
        TruncatedLaurent r = f;
        for (auto& x : r.c_) x = x * s;
        r.normalize();
        return r;
    }
    friend TruncatedLaurent operator*(const F& s, const TruncatedLaurent& f) { return f * s; }

    /// Multiplicative inverse; the valuation negates and the window is kept.
    TruncatedLaurent inverse() const {
        if (zero_) throw DomainError("inverse of a series that vanishes throughout its window");
        const std::size_t w = c_.size();
        const F& a0 = c_.front();
        F inv0 = one_like(a0) / a0;
        std::vector<F> b(w, zero_like(a0));
        b[0] = inv0;
        for (std::size_t k = 1; k < w; ++k) {
            F acc = zero_like(a0);
            for (std::size_t i = 1; i <= k; ++i) {
                if (c_[i].is_zero() || b[k - i].is_zero()) continue;
                acc += c_[i] * b[k - i];
            }
            b[k] = -(acc * inv0);
        }
        return TruncatedLaurent(-val_, std::move(b));
    }

    friend TruncatedLaurent operator/(const TruncatedLaurent& f, const TruncatedLaurent& g) { return f * g.inverse(); }

    enum class LimitKind { finite, infinite, indeterminate };
    struct Limit {
        LimitKind kind;
        std::optional<F> value;  // set when finite
    };

    /// Behaviour as eps -> 0.
    Limit limit_at_zero() const {
        if (zero_) return {LimitKind::indeterminate, std::nullopt};
        if (val_ < 0) return {LimitKind::infinite, std::nullopt};
        if (val_ > 0) return {LimitKind::finite, zero_like(c_.front())};
        return {LimitKind::finite, c_.front()};
    }

    std::string to_string(const std::string& coeff_var = "k") const {
        std::string out;
        if (zero_) return "O(eps^" + std::to_string(precision()) + ")";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[i].to_string(coeff_var) + ")*eps^" + std::to_string(val_ + static_cast<long>(i));
        }
        return out + " + O(eps^" + std::to_string(precision()) + ")";
    }

private:
    TruncatedLaurent(long v, std::vector<F> c) : val_(v), c_(std::move(c)) { normalize(); }

    static F zero_like(const F& x) { return x - x; }

    // drop leading zeros; an all-zero window is kept whole and flagged
    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (lead == c_.size()) {
            zero_ = true;
            return;
        }
        zero_ = false;
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<long>(lead);
        }
    }

    static TruncatedLaurent add(const TruncatedLaurent& f, const TruncatedLaurent& g, bool negate) {
        const long prec = std::min(f.precision(), g.precision());
        const long start = std::min(f.val_, g.val_);
        if (prec <= start) throw PrecisionExhausted("sum has no guaranteed-valid coefficients");
        const std::size_t w = static_cast<std::size_t>(prec - start);
        F zero = zero_like(f.c_.front());
        std::vector<F> r(w, zero);
        for (std::size_t i = 0; i < w; ++i) {
            const long k = start + static_cast<long>(i);
            if (!f.zero_ && k >= f.val_) r[i] += f.c_[static_cast<std::size_t>(k - f.val_)];
            if (!g.zero_ && k >= g.val_) {
                const F& x = g.c_[static_cast<std::size_t>(k - g.val_)];
                if (negate) r[i] -= x;
                else r[i] += x;
            }
        }
        return TruncatedLaurent(start, std::move(r));
    }

    long val_ = 0;
    std::vector<F> c_;
    bool zero_ = false;
};

/// Series over Q(k), the field of the free initial value.
using LaurentQk = TruncatedLaurent<QFunc>;

}  // namespace dpint
