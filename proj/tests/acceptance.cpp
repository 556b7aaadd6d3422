// Acceptance runner: one PASS/FAIL line per criterion with its runtime and
// budget. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dpint/confinement.hpp"
#include "dpint/degree_analyzer.hpp"
#include "dpint/height_analyzer.hpp"
#include "support.hpp"

using namespace dpint;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Collects failure messages; the first few are kept for the report line.
struct Checker {
    Outcome out;
    long failures = 0;
    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ++failures;
        out.ok = false;
        if (failures <= 3) out.detail += (out.detail.empty() ? "" : "; ") + what;
    }
    Outcome finish(const std::string& summary) {
        if (out.ok) out.detail = summary;
        else out.detail += " (" + std::to_string(failures) + " failures)";
        return out;
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

BigInt prime_power_product(const std::map<BigInt, long>& f) {
    BigInt r(1);
    for (const auto& [p, e] : f) {
        BigInt pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
        r *= pe;
    }
    return r;
}

// 1. place decomposition of the height versus log max(|p|, |q|)
Outcome height_identity() {
    Checker ck;
    std::mt19937_64 rng(20261019);
    std::uniform_int_distribution<long> d(1, 1000000);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        BigRational x(BigInt(d(rng) * (rng() % 2 ? -1 : 1)), BigInt(d(rng)));
        const HeightDecomposition h = height_decomposition(x);
        const double lh = log_height(x);
        const double rel = std::fabs(h.total - lh) / std::max(1.0, lh);
        worst = std::max(worst, rel);
        ck.expect(rel <= 1e-12, "relative error " + fmt(rel) + " at " + x.to_string());
        ck.expect(h.exact_total == exact_height(x), "exact height mismatch at " + x.to_string());
        // |x|_inf * prod_p |x|_p = 1 as an integer identity:
        // |num| * prod_{p | den} p^{v} == den * prod_{p | num} p^{v}
        const auto fn = factorize(abs(x.numerator()));
        const auto fd = factorize(x.denominator());
        ck.expect(prime_power_product(fn) == abs(x.numerator()) && prime_power_product(fd) == x.denominator(),
                  "factorization incomplete at " + x.to_string());
        BigInt lhs = abs(x.numerator()) * prime_power_product(fd);
        BigInt rhs = x.denominator() * prime_power_product(fn);
        ck.expect(lhs == rhs, "product formula fails at " + x.to_string());
        long vsum = 0;
        for (const auto& [p, e] : fn) vsum += padic_valuation(x, Place::prime(p)) - e;
        for (const auto& [p, e] : fd) vsum += padic_valuation(x, Place::prime(p)) + e;
        ck.expect(vsum == 0, "valuation mismatch at " + x.to_string());
    }
    return ck.finish("10000 rationals, max relative error " + fmt(worst) + ", 0 identity failures");
}

// 2. series verdict versus closed-form residual verdict
Outcome confinement_cross_check() {
    Checker ck;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> base(-20, 20);
    long cases = 0, indeterminate = 0, confined = 0;
    for (int f = 0; f < 200; ++f) {
        CoefficientFamily fam = testgen::random_family(rng);
        int done = 0;
        while (done < 5) {
            const long j0 = base(rng);
            if (fam.c_at(j0).is_zero()) continue;
            ++done;
            ++cases;
            ConfinementReport r = confinement_test(fam, j0, 8);
            if (r.laurent_verdict == LaurentVerdict::indeterminate) {
                ++indeterminate;
                continue;
            }
            if (r.laurent_verdict == LaurentVerdict::confined) ++confined;
            ck.expect(r.cross_check_ok(), "verdict mismatch at j0 = " + std::to_string(j0));
        }
    }
    const double rate = static_cast<double>(indeterminate) / static_cast<double>(cases);
    ck.expect(rate < 0.01, "indeterminate rate " + fmt(rate));
    return ck.finish(std::to_string(cases) + " cases, " + std::to_string(confined) + " confined, indeterminate rate " +
                     fmt(rate));
}

// 3. leading series coefficients of the first two iterates after the singularity
Outcome series_coefficients() {
    Checker ck;
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 12), base(-10, 10);
    auto rnd = [&](bool nonzero) {
        for (;;) {
            BigRational r(BigInt(num(rng)), BigInt(den(rng)));
            if (!nonzero || !r.is_zero()) return r;
        }
    };
    for (int t = 0; t < 10; ++t) {
        // independent random values at each index: a, b, c as interpolating polynomials
        const long j0 = base(rng);
        std::vector<BigRational> av, bv, cv;
        for (int i = 0; i < 3; ++i) {
            av.push_back(rnd(false));
            bv.push_back(rnd(false));
            cv.push_back(rnd(true));
        }
        auto interp = [&](const std::vector<BigRational>& v) {
            // Lagrange through (j0, v0), (j0+1, v1), (j0+2, v2)
            std::ostringstream s;
            const std::string J = "(j - (" + std::to_string(j0) + "))";
            s << "(" << v[0].to_string() << ")*(" << J << " - 1)*(" << J << " - 2)/2"
              << " - (" << v[1].to_string() << ")*" << J << "*(" << J << " - 2)"
              << " + (" << v[2].to_string() << ")*" << J << "*(" << J << " - 1)/2";
            return s.str();
        };
        CoefficientFamily fam = CoefficientFamily::parse(interp(av), interp(bv), interp(cv));
        for (int i = 0; i < 3; ++i) {
            ck.expect(fam.a_at(j0 + i) == av[i] && fam.b_at(j0 + i) == bv[i] && fam.c_at(j0 + i) == cv[i],
                      "interpolation mismatch");
        }
        auto orbit = singular_orbit(fam, j0, 2);
        const LaurentQk& y1 = orbit[0];
        const LaurentQk& y2 = orbit[1];
        ck.expect(y1.coeff(-2) == QFunc(cv[0]), "y1 eps^-2");
        ck.expect(y1.coeff(-1) == QFunc(bv[0]), "y1 eps^-1");
        ck.expect(y1.coeff(0) == QFunc(av[0]) - free_parameter(), "y1 eps^0");
        ck.expect(y2.coeff(0) == QFunc(av[1]), "y2 eps^0");
        ck.expect(y2.coeff(1) == QFunc(BigRational(-1)), "y2 eps^1");
        ck.expect(y2.coeff(2) == QFunc(bv[1] / cv[0]), "y2 eps^2");
    }
    return ck.finish("10 instantiations, 60 coefficients exact in Q(k)");
}

// 4. recovery of (A, B, C) and the three single perturbations
Outcome dp1_classification() {
    Checker ck;
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 6);
    for (int t = 0; t < 20; ++t) {
        BigRational A(BigInt(num(rng)), BigInt(den(rng))), B(BigInt(num(rng)), BigInt(den(rng)));
        BigRational C;
        while (C.is_zero()) C = BigRational(BigInt(num(rng)), BigInt(den(rng)));
        const std::string b = "(" + A.to_string() + ")*j + (" + B.to_string() + ")";
        auto scan = confinement_scan(CoefficientFamily::parse("0", b, C.to_string()), 2, 8);
        ck.expect(scan.verdict.form == EquationForm::dP1, "not classified dP1 for A=" + A.to_string());
        if (scan.verdict.parameters) {
            const auto& p = *scan.verdict.parameters;
            ck.expect(p.A == A && p.B == B && p.C == C, "wrong parameters for A=" + A.to_string());
        }
        // each single perturbation, with the residual component it must switch on
        struct Perturbation {
            std::string a, b, c;
            int component;
        };
        for (const Perturbation& pt : {Perturbation{"1", b, C.to_string(), 0}, Perturbation{"0", b, "j", 1},
                                       Perturbation{"0", "j^2", C.to_string(), 2}}) {
            auto s = confinement_scan(CoefficientFamily::parse(pt.a, pt.b, pt.c), 2, 8);
            ck.expect(s.verdict.form == EquationForm::not_dP1, "perturbation classified dP1");
            for (const auto& r : s.reports) {
                for (int k = 0; k < 3; ++k) {
                    ck.expect(r.residuals[static_cast<std::size_t>(k)].is_zero() == (k != pt.component),
                              "unexpected residual pattern at j0 = " + std::to_string(r.base_index));
                }
                ck.expect(r.laurent_verdict == LaurentVerdict::unconfined, "perturbed index not unconfined");
            }
        }
    }
    return ck.finish("20 parameter triples recovered; 60 perturbations flagged by their residual");
}

// 5. degree growth: exponential versus quadratic
Outcome entropy_dichotomy() {
    Checker ck;
    const QFunc one(BigRational(1)), z(QPoly::variable(BigRational(1)));
    auto non = iterate_field(CoefficientFamily::parse("1", "0", "1"), one, z, 9);
    auto e = entropy_estimate(non);
    ck.expect(e.slope >= std::log(1.25), "non-integrable slope " + fmt(e.slope));

    auto dp1 = CoefficientFamily::parse("0", "j", "1");
    auto deg = degrees_modular(dp1, one, z, 60);
    auto ed = entropy_estimate(0, deg);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < deg.size(); ++i) {
        xs.push_back(static_cast<double>(i));
        ys.push_back(static_cast<double>(deg[i]));
    }
    auto q = quadratic_fit(xs, ys);
    ck.expect(ed.slope < 0.05, "dP1 slope " + fmt(ed.slope));
    ck.expect(q.relative_residual < 0.10, "quadratic residual " + fmt(q.relative_residual));
    return ck.finish("non-integrable slope " + fmt(e.slope) + " >= " + fmt(std::log(1.25)) + "; dP1 (60 steps, modular) slope " +
                     fmt(ed.slope) + ", quadratic residual " + fmt(q.relative_residual));
}

// 6. height growth: polynomial versus exponential
Outcome height_dichotomy() {
    Checker ck;
    auto dp1 = iterate_rationals(CoefficientFamily::parse("0", "j", "1"), 1, BigRational(1), BigRational(2), 200);
    auto g = classify_growth(dp1);
    ck.expect(g.model == GrowthModel::polynomial, "dP1 classified exponential");
    ck.expect(g.exp_residual > g.poly_residual, "dP1 exponential residual not larger");
    auto non = iterate_rationals(CoefficientFamily::parse("1", "0", "1"), 1, BigRational(1), BigRational(2), 18);
    auto gn = classify_growth(non);
    ck.expect(gn.model == GrowthModel::exponential, "non-integrable classified polynomial");
    ck.expect(gn.exp_rate >= std::log(1.25) && gn.exp_rate <= std::log(3.0), "rate " + fmt(gn.exp_rate));
    return ck.finish("dP1 polynomial (exponent " + fmt(g.poly_exponent) + ", residuals " + fmt(g.poly_residual) + " < " +
                     fmt(g.exp_residual) + "); non-integrable exponential, rate " + fmt(gn.exp_rate));
}

// 7. evaluating the function-field orbit at z = 2 versus iterating over Q
Outcome specialization() {
    Checker ck;
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> c(-4, 4);
    const BigRational zstar(2);
    long compared = 0;
    int specs = 0;
    while (specs < 5) {
        CoefficientFamily fam = testgen::random_family(rng);
        auto seed = [&] {
            QPoly p(std::vector<BigRational>{BigRational(c(rng)), BigRational(c(rng)), BigRational(c(rng))});
            if (p.is_zero()) p = QPoly(std::vector<BigRational>{BigRational(1)});
            return QFunc(p);
        };
        const QFunc y0 = seed(), y1 = seed();
        const long start = static_cast<long>(rng() % 5);
        try {
            // a valid spec: the generic orbit and its specialization both exist
            auto fo = iterate_field(fam, y0, y1, 8, start);
            std::vector<BigRational> at;
            for (const auto& f : fo.iterates) at.push_back(f.eval(zstar));
            auto qo = iterate_rationals(fam, start, at[0], at[1], 8);
            for (std::size_t i = 0; i < at.size(); ++i) {
                ck.expect(qo.iterates[i] == at[i], "mismatch at step " + std::to_string(i));
                ++compared;
            }
            ++specs;
        } catch (const SingularOrbitError&) {
        } catch (const PoleError&) {
        }
    }
    return ck.finish("5 specs, " + std::to_string(compared) + " iterates equal");
}

// 8. the local estimates on orbits through p-adically small values
Outcome lemma_verification() {
    Checker ck;
    // x = 30^20 / 7^60: small at 2, 3, 5 and infinity
    BigInt num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), 30, 20);
    mpz_ui_pow_ui(den.get_mpz_t(), 7, 60);
    const BigRational x(num, den);
    const std::vector<Place> places{Place::prime(2), Place::prime(3), Place::prime(5), Place::infinity()};
    long premises = 0;
    struct F {
        const char *a, *b, *c;
    };
    for (const F& f : {F{"1", "0", "1"}, F{"1", "j", "1"}, F{"j", "1", "2"}}) {
        auto fam = CoefficientFamily::parse(f.a, f.b, f.c);
        auto o = iterate_rationals(fam, 1, BigRational(1), x, 8);
        for (const Place& v : places) {
            for (const auto& r : verify_blowup_lemma(o, fam, v)) {
                if (!r.premise_held) continue;
                ++premises;
                ck.expect(r.conclusion_held, std::string("blow-up violation, a=") + f.a + " at " + v.to_string());
            }
        }
    }
    for (const F& f : {F{"0", "j", "1"}, F{"0", "j^2", "1"}, F{"0", "0", "j"}}) {
        auto fam = CoefficientFamily::parse(f.a, f.b, f.c);
        auto o = iterate_rationals(fam, 1, BigRational(1), x, 8);
        for (const Place& v : places) {
            for (const auto& r : verify_confinement_lemma(o, fam, v)) {
                ++premises;
                ck.expect(r.conclusion_held, std::string("confinement violation, b=") + f.b + " c=" + f.c + " at " +
                                                 v.to_string() + " k=" + std::to_string(r.index));
            }
        }
    }
    ck.expect(premises > 0, "no premise-satisfying index");
    return ck.finish(std::to_string(premises) + " premise-satisfying indices, 0 violations");
}

// 9. orders at z = 0 along the non-integrable orbit
Outcome local_orders() {
    Checker ck;
    const QFunc one(BigRational(1)), z(QPoly::variable(BigRational(1)));
    auto o = iterate_field(CoefficientFamily::parse("1", "0", "1"), one, z, 3);
    auto t = local_order_trace(o, ProjectivePoint<BigRational>::at(BigRational(0)));
    const std::vector<long> want{0, 1, -2, 0, -2};
    std::string got;
    for (std::size_t i = 0; i < t.size(); ++i) {
        ck.expect(t[i].has_value() && *t[i] == want[i], "order at step " + std::to_string(i));
        got += (i ? ", " : "") + (t[i] ? std::to_string(*t[i]) : std::string("?"));
    }
    return ck.finish("trace (" + got + ")");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_seconds;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria{
        {"height identity", 5, height_identity},
        {"confinement cross-check", 30, confinement_cross_check},
        {"singular-orbit series coefficients", 1, series_coefficients},
        {"dP1 classification", 5, dp1_classification},
        {"entropy dichotomy (fast degrees)", 10, entropy_dichotomy},
        {"height growth dichotomy", 120, height_dichotomy},
        {"specialization consistency", 60, specialization},
        {"local estimates on small seeds", 30, lemma_verification},
        {"local-order pattern", 1, local_orders},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt < c.budget_seconds;
        const bool pass = o.ok && in_time;
        if (!pass) ++failed;
        std::printf("[%s] %zu. %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", i + 1, c.name,
                    o.detail.c_str(), dt, c.budget_seconds, in_time ? "" : " OVER BUDGET");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
