#pragma once

// Least-squares fits used by the growth classifiers.

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace dpint {

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    /// 1 - R^2: the scale-free residual used to compare competing models.
    double normalized_residual() const { return 1.0 - r_squared; }
};

struct QuadraticFit {
    double c0 = 0, c1 = 0, c2 = 0;  // y ~ c0 + c1 x + c2 x^2
    /// ||y - fit||_2 / ||y||_2
    double relative_residual = 0;
    double operator()(double x) const { return c0 + x * (c1 + x * c2); }
};

namespace detail {

inline Eigen::VectorXd solve_least_squares(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
    if (xs.size() != ys.size()) throw DomainError("fit: length mismatch");
    if (xs.size() < static_cast<std::size_t>(degree) + 2) throw DomainError("fit: too few points");
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd A(n, degree + 1);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1;
        for (int k = 0; k <= degree; ++k, p *= xs[static_cast<std::size_t>(i)]) A(i, k) = p;
        y(i) = ys[static_cast<std::size_t>(i)];
    }
    auto qr = A.colPivHouseholderQr();
    if (qr.rank() < degree + 1) throw DomainError("fit: degenerate abscissae");
    return qr.solve(y);
}

}  // namespace detail

inline LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    Eigen::VectorXd c = detail::solve_least_squares(xs, ys, 1);
    LinearFit f;
    f.intercept = c(0);
    f.slope = c(1);
    double mean = 0;
    for (double y : ys) mean += y;
    mean /= static_cast<double>(ys.size());
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (f.intercept + f.slope * xs[i]);
        ss_res += r * r;
        ss_tot += (ys[i] - mean) * (ys[i] - mean);
    }
    f.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : (ss_res == 0 ? 1.0 : 0.0);
    return f;
}

inline QuadraticFit quadratic_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    Eigen::VectorXd c = detail::solve_least_squares(xs, ys, 2);
    QuadraticFit f{c(0), c(1), c(2), 0};
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - f(xs[i]);
        num += r * r;
        den += ys[i] * ys[i];
    }
    f.relative_residual = den > 0 ? std::sqrt(num / den) : 0.0;
    return f;
}

}  // namespace dpint
