#pragma once

/** \file variational.hpp
 *
 *  \brief Rayleigh-Ritz driver for the radial problem: eigenvalues
 *         W_{j,s}(theta), convergence in the basis size and the
 *         Hellmann-Feynman slope dW/dtheta = -<1/x>.
 */

#include <cmath>
#include <string>
#include <vector>

#include "qes/error.hpp"
#include "qes/linalg.hpp"
#include "qes/model.hpp"

namespace qes {

/// Largest basis the driver accepts.
inline constexpr int max_basis_size = 20;

enum class Precision
{
    binary64, ///< double; adequate up to N ~ 13 for |theta| of a few units
    wide      ///< WideReal (binary128 where available)
};

struct VariationalResult
{
    RadialProblem problem;
    int basis_size{0};
    std::vector<double> eigenvalues;    ///< W_0 < W_1 < ... (k values)
    Matrix<double> eigenvectors;        ///< N x k, S-orthonormal columns
    std::vector<double> inverse_radius; ///< <1/x> for each returned level
    double overlap_condition{0.0};
};

namespace detail {

template <class Real>
VariationalResult solve_in(RadialProblem const& problem, int basis_size, int levels)
{
    BasisSpec const basis{problem.s, basis_size};
    auto const pair = assemble<Real>(problem, basis);
    auto const eig = solve_generalized(pair, levels);

    VariationalResult res;
    res.problem = problem;
    res.basis_size = basis_size;
    res.overlap_condition = static_cast<double>(eig.condition_estimate);
    res.eigenvectors = eig.vectors.template cast<double>();
    for (int j = 0; j < levels; ++j) {
        res.eigenvalues.push_back(static_cast<double>(eig.values[static_cast<std::size_t>(j)]));
        auto const c = eig.vectors.column(static_cast<std::size_t>(j));
        res.inverse_radius.push_back(
            static_cast<double>(expectation<Real>(RadialPower{-1.0}, std::span<Real const>(c), basis)));
    }
    return res;
}

} // namespace detail

/// The k lowest Rayleigh-Ritz eigenpairs in a basis of N functions.
inline VariationalResult solve(RadialProblem const& problem, int basis_size, int levels,
                               Precision precision = Precision::wide)
{
    problem.validate();
    if (basis_size < 1 || basis_size > max_basis_size) {
        throw DomainError("variational solve: basis size " + std::to_string(basis_size) + " outside 1.." +
                          std::to_string(max_basis_size));
    }
    if (levels < 1 || levels > basis_size) {
        throw DomainError("variational solve: level count " + std::to_string(levels) + " outside 1.." +
                          std::to_string(basis_size));
    }
    return precision == Precision::binary64 ? detail::solve_in<double>(problem, basis_size, levels)
                                            : detail::solve_in<WideReal>(problem, basis_size, levels);
}

struct ConvergenceTable
{
    struct Row
    {
        int basis_size{0};
        std::vector<double> eigenvalues; ///< min(N, k) values
    };

    std::vector<Row> rows;
    std::vector<bool> converged; ///< per level, last two rows within tolerance
};

/// Rows N = 2..N_max; level j is flagged when |W(N) - W(N-1)| <= tol |W(N)|
/// on the final row.
inline ConvergenceTable convergence_study(RadialProblem const& problem, int max_size, int levels, double tol = 1e-9,
                                          Precision precision = Precision::wide)
{
    if (max_size < 2 || max_size > max_basis_size) {
        throw DomainError("convergence_study: N_max must lie in 2.." + std::to_string(max_basis_size));
    }
    if (levels < 1) {
        throw DomainError("convergence_study: need at least one level");
    }
    ConvergenceTable table;
    for (int n = 2; n <= max_size; ++n) {
        int const k = std::min(n, levels);
        table.rows.push_back({n, solve(problem, n, k, precision).eigenvalues});
    }
    table.converged.assign(static_cast<std::size_t>(levels), false);
    if (table.rows.size() >= 2) {
        auto const& last = table.rows.back().eigenvalues;
        auto const& prev = table.rows[table.rows.size() - 2].eigenvalues;
        for (std::size_t j = 0; j < last.size() && j < prev.size(); ++j) {
            table.converged[j] = std::fabs(last[j] - prev[j]) <= tol * std::fabs(last[j]);
        }
    }
    return table;
}

struct HellmannFeynmanCheck
{
    double slope_fd{0.0};     ///< [W_j(theta+h) - W_j(theta-h)] / 2h
    double minus_expect{0.0}; ///< -<1/x> on the level-j eigenvector
};

inline HellmannFeynmanCheck hellmann_feynman_check(RadialProblem const& problem, int basis_size, int level,
                                                   double h = 1e-4, Precision precision = Precision::wide)
{
    if (!(h > 0.0)) {
        throw DomainError("hellmann_feynman_check: step h must be positive");
    }
    int const k = level + 1;
    auto const centre = solve(problem, basis_size, k, precision);
    auto const plus = solve({problem.s, problem.theta + h}, basis_size, k, precision);
    auto const minus = solve({problem.s, problem.theta - h}, basis_size, k, precision);
    auto const j = static_cast<std::size_t>(level);
    return {(plus.eigenvalues[j] - minus.eigenvalues[j]) / (2.0 * h), -centre.inverse_radius[j]};
}

} // namespace qes
