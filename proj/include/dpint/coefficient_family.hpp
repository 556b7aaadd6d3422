#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "expr.hpp"

namespace dpint {

/// The coefficients a_j, b_j, c_j of
///     y_{j+1} + y_{j-1} = (a_j y_j^2 + b_j y_j + c_j) / y_j^2
/// as rational functions of the index j.
class CoefficientFamily {
public:
    CoefficientFamily(QFunc a, QFunc b, QFunc c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        if (c_.is_zero()) throw DomainError("coefficient c must not vanish identically (c ≢ 0)");
    }

    /// Parses the three expressions in the index variable `j`.
    static CoefficientFamily parse(std::string_view a, std::string_view b, std::string_view c) {
        return {parse_expression(a, "j"), parse_expression(b, "j"), parse_expression(c, "j")};
    }

    const QFunc& a() const { return a_; }
    const QFunc& b() const { return b_; }
    const QFunc& c() const { return c_; }

    BigRational a_at(long j) const { return at(a_, j, "a"); }
    BigRational b_at(long j) const { return at(b_, j, "b"); }
    BigRational c_at(long j) const { return at(c_, j, "c"); }

    bool evaluable_at(long j) const {
        BigRational x(j);
        return !a_.den().eval(x).is_zero() && !b_.den().eval(x).is_zero() && !c_.den().eval(x).is_zero();
    }

    /// Integer poles of any coefficient. All of them lie within the Cauchy
    /// root bound of the denominators, so the set is finite and enumerable.
    std::vector<long> integer_poles() const {
        long bound = 0;
        for (const QFunc* f : {&a_, &b_, &c_}) bound = std::max(bound, cauchy_bound(f->den()));
        if (bound > 10'000'000) throw DomainError("pole bound too large to enumerate");
        std::vector<long> out;
        for (long j = -bound; j <= bound; ++j) {
            if (!evaluable_at(j)) out.push_back(j);
        }
        return out;
    }

private:
    static BigRational at(const QFunc& f, long j, const char* name) {
        try {
            return f.eval(BigRational(j));
        } catch (const PoleError&) {
            throw PoleError(std::to_string(j), std::string("coefficient ") + name + " has a pole");
        }
    }

    static long cauchy_bound(const QPoly& p) {
        if (p.degree() <= 0) return 0;
        BigRational m(0);
        const BigRational& lc = p.lead();
        for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, (p.coeffs()[i] / lc).abs());
        return static_cast<long>(std::ceil(m.to_double())) + 1;
    }

    QFunc a_, b_, c_;
};

}  // namespace dpint
