#pragma once

/** \file linalg.hpp
 *
 *  \brief Rayleigh-Ritz machinery in the non-orthogonal basis
 *         phi_j(x) = x^(s+j) exp(-x^2/2), j = 0..N-1.
 *
 *  All inner products carry the radial weight x dx on (0, inf) and reduce
 *  to the moments
 *
 *      G(a) = int_0^inf x^a exp(-x^2) dx = Gamma((a+1)/2) / 2.
 *
 *  The dense kernels are templates over the scalar type: the monomial
 *  Gram matrix has condition numbers beyond 1e18 for N > 13, so the
 *  variational driver runs them in WideReal (binary128) by default.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qes/error.hpp"
#include "qes/model.hpp"
#include "qes/real.hpp"

namespace qes {

/// Dense row-major matrix.
template <class Real = double>
class Matrix
{
  public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, Real fill = Real(0))
        : rows_(rows)
        , cols_(cols)
        , data_(rows * cols, fill)
    {
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = Real(1);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Real const& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Real const> data() const { return data_; }

    std::vector<Real> column(std::size_t j) const
    {
        std::vector<Real> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            c[i] = (*this)(i, j);
        }
        return c;
    }

    template <class Other>
    Matrix<Other> cast() const
    {
        Matrix<Other> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(i, j) = static_cast<Other>((*this)(i, j));
            }
        }
        return out;
    }

  private:
    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<Real> data_;
};

/// Eigen-decomposition of a real symmetric matrix; values ascending,
/// vectors stored as columns.
template <class Real>
struct SymmetricEigen
{
    std::vector<Real> values;
    Matrix<Real> vectors;
};

/// Cyclic Jacobi diagonalization of a symmetric matrix.
template <class Real>
SymmetricEigen<Real> jacobi_eigen(Matrix<Real> a, bool want_vectors = true, int max_sweeps = 100)
{
    using T = RealTraits<Real>;
    std::size_t const n = a.rows();
    if (a.cols() != n) {
        throw DomainError("jacobi_eigen: matrix must be square");
    }
    Matrix<Real> v = want_vectors ? Matrix<Real>::identity(n) : Matrix<Real>();

    Real total(0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            total += a(i, j) * a(i, j);
        }
    }
    Real const eps = T::epsilon();
    Real const threshold = eps * eps * total;

    bool converged = n < 2;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        Real off(0);
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Real const apq = a(p, q);
                if (apq == Real(0)) {
                    continue;
                }
                Real const app = a(p, p);
                Real const aqq = a(q, q);
                // skip rotations that can no longer change the diagonal
                if (T::abs(apq) <= eps * eps * (T::abs(app) + T::abs(aqq)) * Real(0.01)) {
                    a(p, q) = a(q, p) = Real(0);
                    continue;
                }
                Real const theta = (aqq - app) / (Real(2) * apq);
                Real t = Real(1) / (T::abs(theta) + T::sqrt(theta * theta + Real(1)));
                if (theta < Real(0)) {
                    t = -t;
                }
                Real const c = Real(1) / T::sqrt(t * t + Real(1));
                Real const sn = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    Real const akp = a(k, p);
                    Real const akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Real const apk = a(p, k);
                    Real const aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(p, q) = a(q, p) = Real(0);
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        Real const vkp = v(k, p);
                        Real const vkq = v(k, q);
                        v(k, p) = c * vkp - sn * vkq;
                        v(k, q) = sn * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if (!converged) {
        throw ConvergenceError("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymmetricEigen<Real> out;
    out.values.resize(n);
    if (want_vectors) {
        out.vectors = Matrix<Real>(n, n);
    }
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        if (want_vectors) {
            for (std::size_t i = 0; i < n; ++i) {
                out.vectors(i, k) = v(i, order[k]);
            }
        }
    }
    return out;
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
template <class Real>
Matrix<Real> cholesky(Matrix<Real> const& s)
{
    using T = RealTraits<Real>;
    std::size_t const n = s.rows();
    Matrix<Real> l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Real d = s(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            d -= l(j, k) * l(j, k);
        }
        if (!(d > Real(0)) || !T::isfinite(d)) {
            throw ConditioningError("overlap matrix is not positive definite at working precision (pivot " +
                                    std::to_string(j) + " of " + std::to_string(n) +
                                    "); use a smaller basis or a wider scalar type");
        }
        l(j, j) = T::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            Real v = s(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                v -= l(i, k) * l(j, k);
            }
            l(i, j) = v / l(j, j);
        }
    }
    return l;
}

/// int_0^inf x^a exp(-x^2) dx = Gamma((a+1)/2) / 2, for a > -1.
template <class Real = double>
Real gamma_half_integral(Real a)
{
    if (!(a > Real(-1))) {
        throw DomainError("gamma_half_integral: divergent integral, exponent a = " +
                          std::to_string(static_cast<double>(a)) + " <= -1");
    }
    return RealTraits<Real>::tgamma((a + Real(1)) / Real(2)) / Real(2);
}

/// The basis {x^(s+j) exp(-x^2/2), j = 0..size-1}.
struct BasisSpec
{
    double s{0.0};
    int size{1};

    void validate() const
    {
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw DomainError("basis exponent s must be finite and >= 0");
        }
        if (size < 1) {
            throw DomainError("basis size must be >= 1");
        }
    }

    double value(int j, double x) const { return std::pow(x, s + j) * std::exp(-0.5 * x * x); }
};

/// Hamiltonian and overlap matrices of one Rayleigh-Ritz problem.
template <class Real = double>
struct MatrixPair
{
    Matrix<Real> hamiltonian;
    Matrix<Real> overlap;

    std::size_t size() const { return overlap.rows(); }
};

/**
 *  Builds S_ij = <phi_i|phi_j> and H_ij = <phi_i|H|phi_j> for
 *
 *      H = -d^2/dx^2 - (1/x) d/dx + s^2/x^2 - theta/x + x^2.
 *
 *  Acting on phi_j (p = s + j) the centrifugal and harmonic pieces cancel
 *  against the derivatives, leaving
 *
 *      H phi_j = [-j(2s+j) x^(p-2) + (2p+2) x^p - theta x^(p-1)] exp(-x^2/2),
 *
 *  so every element is a combination of three moments G(2s+i+j+c).
 */
template <class Real = double>
MatrixPair<Real> assemble(RadialProblem const& problem, BasisSpec const& basis)
{
    problem.validate();
    basis.validate();
    if (basis.s != problem.s) {
        throw DomainError("assemble: basis exponent differs from the problem exponent");
    }
    std::size_t const n = static_cast<std::size_t>(basis.size);
    Real const s(problem.s);
    Real const theta(problem.theta);

    // moments[t] = G(2s + t), t = 0 .. 2n-1
    std::vector<Real> moments(2 * n);
    for (std::size_t t = 0; t < moments.size(); ++t) {
        moments[t] = gamma_half_integral<Real>(Real(2) * s + Real(static_cast<double>(t)));
    }

    MatrixPair<Real> pair{Matrix<Real>(n, n), Matrix<Real>(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Real const jr(static_cast<double>(j));
            pair.overlap(i, j) = moments[i + j + 1];
            Real h = (Real(2) * (s + jr) + Real(2)) * moments[i + j + 1] - theta * moments[i + j];
            if (j > 0) {
                h -= jr * (Real(2) * s + jr) * moments[i + j - 1];
            }
            pair.hamiltonian(i, j) = h;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Real const avg = (pair.hamiltonian(i, j) + pair.hamiltonian(j, i)) / Real(2);
            pair.hamiltonian(i, j) = pair.hamiltonian(j, i) = avg;
        }
    }
    return pair;
}

/// Lowest solutions of H c = W S c.
template <class Real>
struct GeneralizedEigen
{
    std::vector<Real> values;  ///< ascending
    Matrix<Real> vectors;      ///< S-orthonormal columns
    Real condition_estimate{}; ///< (max/min Cholesky pivot)^2 of the equilibrated overlap
};

/**
 *  Cholesky reduction: S is equilibrated to unit diagonal, factored as
 *  L L^T, and L^-1 H L^-T is diagonalized by cyclic Jacobi. Eigenvectors
 *  are mapped back to the original basis.
 */
template <class Real>
GeneralizedEigen<Real> solve_generalized(MatrixPair<Real> const& pair, int k)
{
    using T = RealTraits<Real>;
    std::size_t const n = pair.size();
    if (pair.hamiltonian.rows() != n || pair.hamiltonian.cols() != n || pair.overlap.cols() != n) {
        throw DomainError("solve_generalized: matrix shapes disagree");
    }
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw DomainError("solve_generalized: requested " + std::to_string(k) + " eigenpairs from a basis of " +
                          std::to_string(n));
    }

    std::vector<Real> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(pair.overlap(i, i) > Real(0))) {
            throw ConditioningError("overlap matrix has a non-positive diagonal entry");
        }
        d[i] = Real(1) / T::sqrt(pair.overlap(i, i));
    }
    Matrix<Real> s(n, n);
    Matrix<Real> h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s(i, j) = pair.overlap(i, j) * d[i] * d[j];
            h(i, j) = pair.hamiltonian(i, j) * d[i] * d[j];
        }
    }
    Matrix<Real> const l = cholesky(s);

    // x = L^-1 h, then a = L^-1 x^T = L^-1 h L^-T
    auto forward = [&](Matrix<Real> const& rhs) {
        Matrix<Real> x(n, n);
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                Real v = rhs(i, c);
                for (std::size_t q = 0; q < i; ++q) {
                    v -= l(i, q) * x(q, c);
                }
                x(i, c) = v / l(i, i);
            }
        }
        return x;
    };
    Matrix<Real> const x = forward(h);
    Matrix<Real> xt(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            xt(i, j) = x(j, i);
        }
    }
    Matrix<Real> a = forward(xt);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Real const avg = (a(i, j) + a(j, i)) / Real(2);
            a(i, j) = a(j, i) = avg;
        }
    }

    auto const eig = jacobi_eigen(std::move(a));

    GeneralizedEigen<Real> out;
    std::size_t const kk = static_cast<std::size_t>(k);
    out.values.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(kk));
    out.vectors = Matrix<Real>(n, kk);
    for (std::size_t c = 0; c < kk; ++c) {
        // L^T z = y, c = D z
        std::vector<Real> z(n);
        for (std::size_t ii = n; ii-- > 0;) {
            Real v = eig.vectors(ii, c);
            for (std::size_t q = ii + 1; q < n; ++q) {
                v -= l(q, ii) * z[q];
            }
            z[ii] = v / l(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, c) = d[i] * z[i];
        }
    }

    Real pmin = l(0, 0);
    Real pmax = l(0, 0);
    for (std::size_t i = 1; i < n; ++i) {
        pmin = std::min(pmin, l(i, i));
        pmax = std::max(pmax, l(i, i));
    }
    out.condition_estimate = (pmax / pmin) * (pmax / pmin);
    return out;
}

/// Radial observable f(x) = x^power.
struct RadialPower
{
    double power{0.0};
};

/**
 *  <f> = c^T M c / c^T S c with M_ij = G(2s + i + j + 1 + power).
 *  Requires power > -(2s + 2); s = 0 with f = 1/x^2 diverges.
 */
template <class Real = double>
Real expectation(RadialPower f, std::span<Real const> c, BasisSpec const& basis)
{
    basis.validate();
    if (c.size() != static_cast<std::size_t>(basis.size)) {
        throw DomainError("expectation: coefficient vector length differs from basis size");
    }
    if (!(f.power > -(2.0 * basis.s + 2.0))) {
        throw DomainError("expectation: <x^" + std::to_string(f.power) + "> diverges for s = " +
                          std::to_string(basis.s));
    }
    std::size_t const n = c.size();
    std::vector<Real> mom(2 * n);
    std::vector<Real> mom_f(2 * n);
    for (std::size_t t = 0; t < 2 * n; ++t) {
        Real const a = Real(2) * Real(basis.s) + Real(static_cast<double>(t)) + Real(1);
        mom[t] = gamma_half_integral<Real>(a);
        mom_f[t] = gamma_half_integral<Real>(a + Real(f.power));
    }
    Real num(0);
    Real den(0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            num += c[i] * mom_f[i + j] * c[j];
            den += c[i] * mom[i + j] * c[j];
        }
    }
    return num / den;
}

/// Gauss quadrature nodes/weights.
struct GaussRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Golub-Welsch rule for the weight t^alpha exp(-t) on (0, inf).
inline GaussRule gauss_laguerre(int order, double alpha)
{
    if (order < 1 || !(alpha > -1.0)) {
        throw DomainError("gauss_laguerre: need order >= 1 and alpha > -1");
    }
    std::size_t const n = static_cast<std::size_t>(order);
    Matrix<double> j(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, i) = 2.0 * static_cast<double>(i) + alpha + 1.0;
        if (i + 1 < n) {
            double const k = static_cast<double>(i + 1);
            j(i, i + 1) = j(i + 1, i) = std::sqrt(k * (k + alpha));
        }
    }
    auto const eig = jacobi_eigen(std::move(j));
    GaussRule rule;
    double const mu0 = std::tgamma(alpha + 1.0);
    for (std::size_t q = 0; q < n; ++q) {
        rule.nodes.push_back(eig.values[q]);
        rule.weights.push_back(mu0 * eig.vectors(0, q) * eig.vectors(0, q));
    }
    return rule;
}

/**
 *  Cross-check oracle: the Hamiltonian in the orthonormal basis
 *  chi_k = L_k^(s)(x^2) x^s exp(-x^2/2) / sqrt(h_k), the theta = 0
 *  eigenfunctions. H = diag(2(2k+s+1)) - theta V with
 *  V_km = int chi_k chi_m dx, integrated exactly by Gauss-Laguerre in
 *  t = x^2 with alpha = s - 1/2. The overlap is the identity.
 *
 *  The span differs from the monomial basis (even polynomials in x only),
 *  so agreement is expected only for converged eigenvalues. Convergence
 *  is algebraic in the size (the x^(s+1) part of the true eigenfunction is
 *  missing), and the Golub-Welsch weights lose relative accuracy beyond
 *  about 26 nodes, so size is capped at 24.
 */
inline MatrixPair<double> laguerre_pair(RadialProblem const& problem, int size)
{
    problem.validate();
    if (size < 1 || size > 24) {
        throw DomainError("laguerre_pair: size must lie in 1..24");
    }
    std::size_t const n = static_cast<std::size_t>(size);
    double const s = problem.s;
    GaussRule const rule = gauss_laguerre(size, s - 0.5);

    // normalized Laguerre values: ell_k(t) = L_k^(s)(t) sqrt(k! / Gamma(k+s+1))
    Matrix<double> ell(n, rule.nodes.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        double const t = rule.nodes[q];
        double prev = 0.0;
        double cur = 1.0 / std::sqrt(std::tgamma(s + 1.0));
        for (std::size_t k = 0; k < n; ++k) {
            ell(k, q) = cur;
            double const kk = static_cast<double>(k);
            // orthonormal form of (k+1) L_{k+1} = (2k+1+s-t) L_k - (k+s) L_{k-1}
            double const next = ((2.0 * kk + 1.0 + s - t) * cur - std::sqrt(kk * (kk + s)) * prev) /
                                std::sqrt((kk + 1.0) * (kk + 1.0 + s));
            prev = cur;
            cur = next;
        }
    }

    MatrixPair<double> pair{Matrix<double>(n, n), Matrix<double>::identity(n)};
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m <= k; ++m) {
            double v = 0.0;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                v += rule.weights[q] * ell(k, q) * ell(m, q);
            }
            // chi_k = sqrt(2) ell_k(x^2) x^s e^(-x^2/2), so
            // int chi_k chi_m dx = int ell_k ell_m t^(s-1/2) e^-t dt
            double const h = -problem.theta * v;
            pair.hamiltonian(k, m) = pair.hamiltonian(m, k) = h;
        }
        pair.hamiltonian(k, k) += 2.0 * (2.0 * static_cast<double>(k) + s + 1.0);
    }
    return pair;
}

} // namespace qes
