#pragma once

/** \file frobenius.hpp
 *
 *  \brief Frobenius series F(x) = x^s exp(-x^2/2) sum_j a_j x^j and its
 *         polynomial truncations.
 *
 *  The coefficients obey
 *
 *      a_{j+2} = [-theta a_{j+1} + (2j + 2s - W + 2) a_j] / [(j+2)(j+2s+2)],
 *
 *  with a_{-1} = 0, a_0 = 1. Requiring a_{n+1} = a_{n+2} = 0 fixes
 *  W = 2(n+s+1) and leaves a_{n+1}(theta) = 0, a polynomial equation of
 *  degree n+1 in theta.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "qes/error.hpp"
#include "qes/linalg.hpp"
#include "qes/polynomial.hpp"

namespace qes {

/// a_j as a polynomial in theta.
using ThetaPolynomial = Polynomial;

/// Returns a_{j+2} given a_j and a_{j+1}.
inline double recurrence_step(int j, double s, double W, double theta, double a_j, double a_j1)
{
    if (j < -1) {
        throw DomainError("recurrence_step: index j = " + std::to_string(j) + " < -1");
    }
    if (!(s >= 0.0)) {
        throw DomainError("recurrence_step: s must be >= 0");
    }
    double const jd = static_cast<double>(j);
    double const denom = (jd + 2.0) * (jd + 2.0 * s + 2.0);
    return (-theta * a_j1 + (2.0 * jd + 2.0 * s - W + 2.0) * a_j) / denom;
}

/// Eigenvalue shared by every degree-n truncation.
inline double truncation_eigenvalue(int n, double s) { return 2.0 * (n + s + 1.0); }

/// a_0(theta) .. a_{n+1}(theta) at W = 2(n+s+1).
inline std::vector<ThetaPolynomial> coefficients_as_theta_polynomials(int n, double s)
{
    if (n < 0 || !(s >= 0.0)) {
        throw DomainError("coefficients_as_theta_polynomials: need n >= 0 and s >= 0");
    }
    double const W = truncation_eigenvalue(n, s);
    std::vector<ThetaPolynomial> a;
    a.reserve(static_cast<std::size_t>(n) + 2);
    ThetaPolynomial prev;                            // a_{-1}
    a.push_back(ThetaPolynomial({1.0}));            // a_0
    for (int j = -1; j < n; ++j) {
        double const jd = static_cast<double>(j);
        double const denom = (jd + 2.0) * (jd + 2.0 * s + 2.0);
        ThetaPolynomial const& aj1 = a.back();
        ThetaPolynomial const& aj = j >= 0 ? a[static_cast<std::size_t>(j)] : prev;
        ThetaPolynomial next = (-1.0 / denom) * aj1.shifted() + ((2.0 * jd + 2.0 * s - W + 2.0) / denom) * aj;
        a.push_back(std::move(next));
    }
    return a;
}

namespace detail {

/// a_{n+1}(theta) and d a_{n+1}/d theta by forward recurrence.
inline std::pair<double, double> last_coefficient(int n, double s, double theta)
{
    double const W = truncation_eigenvalue(n, s);
    double a0 = 0.0, a1 = 1.0;   // a_{j}, a_{j+1}
    double d0 = 0.0, d1 = 0.0;   // derivatives
    for (int j = -1; j < n; ++j) {
        double const jd = static_cast<double>(j);
        double const denom = (jd + 2.0) * (jd + 2.0 * s + 2.0);
        double const c = 2.0 * jd + 2.0 * s - W + 2.0;
        double const a2 = (-theta * a1 + c * a0) / denom;
        double const d2 = (-a1 - theta * d1 + c * d0) / denom;
        a0 = a1;
        a1 = a2;
        d0 = d1;
        d1 = d2;
    }
    return {a1, d1};
}

/// sum_k |c_k| |theta|^k of a_{n+1}, the rounding scale of its value.
inline double last_coefficient_scale(int n, double s, double theta)
{
    double const W = truncation_eigenvalue(n, s);
    double a0 = 0.0, a1 = 1.0;
    for (int j = -1; j < n; ++j) {
        double const jd = static_cast<double>(j);
        double const denom = (jd + 2.0) * (jd + 2.0 * s + 2.0);
        double const c = std::fabs(2.0 * jd + 2.0 * s - W + 2.0);
        double const a2 = (std::fabs(theta) * a1 + c * a0) / denom;
        a0 = a1;
        a1 = a2;
    }
    return a1;
}

} // namespace detail

/// Degree-n polynomial solutions sharing W = 2(n+s+1).
struct TruncationSolution
{
    int n{0};
    double s{0.0};
    double W{0.0};
    std::vector<double> roots;                    ///< theta_s^(n,i), ascending
    std::vector<std::vector<double>> coeff_table; ///< per root: a_0 .. a_n, a_0 = 1
    std::vector<double> residuals;                ///< |a_{n+1}(theta_i)| per root
};

/**
 *  Solves a_{n+1}(theta) = 0.
 *
 *  Dividing row k of theta a_k = c_{k-1} a_{k-1} - d_{k-1} a_{k+1} by the
 *  usual diagonal similarity turns the truncated recurrence into a
 *  symmetric tridiagonal matrix with zero diagonal and off-diagonals
 *  sqrt(2(n-k)(k+1)(k+2s+1)); its eigenvalues are the roots (so they are
 *  real, simple and symmetric about zero). Jacobi estimates are polished
 *  by Newton on the recurrence, falling back to TOMS 748 on the bracket
 *  between neighbouring midpoints.
 */
inline TruncationSolution truncate(int n, double s)
{
    if (n < 0 || !(s >= 0.0) || !std::isfinite(s)) {
        throw DomainError("truncate: need n >= 0 and finite s >= 0");
    }
    TruncationSolution sol;
    sol.n = n;
    sol.s = s;
    sol.W = truncation_eigenvalue(n, s);

    std::size_t const m = static_cast<std::size_t>(n) + 1;
    Matrix<double> jac(m, m);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        double const kd = static_cast<double>(k);
        double const b = std::sqrt(2.0 * (n - kd) * (kd + 1.0) * (kd + 2.0 * s + 1.0));
        jac(k, k + 1) = jac(k + 1, k) = b;
    }
    std::vector<double> estimates = jacobi_eigen(std::move(jac), false).values;

    std::vector<double> roots(m);
    for (std::size_t i = 0; i < m; ++i) {
        double const lo = i == 0 ? estimates[i] - 1.0 - std::fabs(estimates[i])
                                 : 0.5 * (estimates[i - 1] + estimates[i]);
        double const hi = i + 1 == m ? estimates[i] + 1.0 + std::fabs(estimates[i])
                                     : 0.5 * (estimates[i] + estimates[i + 1]);
        double theta = estimates[i];
        bool ok = false;
        for (int it = 0; it < 50; ++it) {
            auto const [f, df] = detail::last_coefficient(n, s, theta);
            if (f == 0.0) {
                ok = true;
                break;
            }
            if (df == 0.0 || !std::isfinite(df)) {
                break;
            }
            double const next = theta - f / df;
            if (!(next > lo && next < hi)) {
                break;
            }
            double const step = std::fabs(next - theta);
            theta = next;
            if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(theta))) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            auto f = [&](double t) { return detail::last_coefficient(n, s, t).first; };
            double const flo = f(lo);
            double const fhi = f(hi);
            if (flo * fhi > 0.0) {
                throw ConvergenceError("truncate: no sign change bracketing root " + std::to_string(i + 1) +
                                       " of a_" + std::to_string(n + 1) + "(theta)");
            }
            std::uintmax_t iters = 200;
            auto const r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                             boost::math::tools::eps_tolerance<double>(52), iters);
            theta = 0.5 * (r.first + r.second);
        }
        roots[i] = theta;
    }

    // parity: a_{n+1}(-theta) = (-1)^(n+1) a_{n+1}(theta)
    for (std::size_t i = 0; i < m / 2; ++i) {
        double const mag = 0.5 * (std::fabs(roots[i]) + std::fabs(roots[m - 1 - i]));
        roots[i] = -mag;
        roots[m - 1 - i] = mag;
    }
    if (m % 2 == 1) {
        std::size_t const mid = m / 2;
        double const spacing = m > 1 ? roots[mid + 1] - roots[mid - 1] : 1.0;
        if (detail::last_coefficient(n, s, 0.0).first != 0.0 || std::fabs(roots[mid]) > 1e-8 * spacing) {
            throw ConvergenceError("truncate: even degree " + std::to_string(n) + " lost its root at theta = 0");
        }
        roots[mid] = 0.0;
    }
    for (std::size_t i = 1; i < m; ++i) {
        if (!(roots[i] > roots[i - 1])) {
            throw ConvergenceError("truncate: roots of a_" + std::to_string(n + 1) + "(theta) not strictly increasing");
        }
    }

    for (double theta : roots) {
        double const res = std::fabs(detail::last_coefficient(n, s, theta).first);
        double const scale = detail::last_coefficient_scale(n, s, theta);
        if (res > 1e-10 * scale) {
            throw ConvergenceError("truncate: residual " + std::to_string(res) + " at theta = " + std::to_string(theta));
        }
        sol.residuals.push_back(res);

        std::vector<double> a(static_cast<std::size_t>(n) + 1);
        a[0] = 1.0;
        double prev = 0.0;
        for (int j = -1; j + 2 <= n; ++j) {
            double const next = recurrence_step(j, s, sol.W, theta, prev, a[static_cast<std::size_t>(j + 1)]);
            prev = a[static_cast<std::size_t>(j + 1)];
            a[static_cast<std::size_t>(j + 2)] = next;
        }
        sol.coeff_table.push_back(std::move(a));
    }
    sol.roots = std::move(roots);
    return sol;
}

/// F_s^(n,i)(x) = x^s P(x) exp(-x^2/2) with P of degree n and P(0) = 1.
struct PolynomialEigenfunction
{
    int n{0};
    double s{0.0};
    int root_index{1}; ///< i, 1-based
    double theta{0.0};
    double W{0.0};
    std::vector<double> coefficients; ///< a_0 .. a_n

    Polynomial polynomial() const { return Polynomial(coefficients); }

    double operator()(double x) const { return std::pow(x, s) * polynomial()(x) * std::exp(-0.5 * x * x); }

    /// int_0^inf F(x)^2 x dx
    double norm_squared() const
    {
        double v = 0.0;
        for (std::size_t j = 0; j < coefficients.size(); ++j) {
            for (std::size_t k = 0; k < coefficients.size(); ++k) {
                v += coefficients[j] * coefficients[k] *
                     gamma_half_integral(2.0 * s + static_cast<double>(j + k) + 1.0);
            }
        }
        return v;
    }
};

inline PolynomialEigenfunction eigenfunction(TruncationSolution const& sol, int i)
{
    if (i < 1 || i > sol.n + 1) {
        throw DomainError("eigenfunction: root index " + std::to_string(i) + " outside 1.." +
                          std::to_string(sol.n + 1));
    }
    auto const idx = static_cast<std::size_t>(i - 1);
    return PolynomialEigenfunction{sol.n, sol.s, i, sol.roots[idx], sol.W, sol.coeff_table[idx]};
}

/// Strictly positive zeros of F, i.e. positive real roots of P.
inline int count_nodes(PolynomialEigenfunction const& f) { return count_positive_roots(f.polynomial()); }

} // namespace qes
