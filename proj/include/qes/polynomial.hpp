#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace qes {

/// Real polynomial, coefficient k multiplies t^k.
class Polynomial
{
  public:
    Polynomial() = default;

    explicit Polynomial(std::vector<double> coeffs)
        : coeffs_(std::move(coeffs))
    {
        trim();
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    std::vector<double> const& coeffs() const { return coeffs_; }

    double coeff(int k) const
    {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
    }

    double operator()(double t) const
    {
        double v = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            v = v * t + coeffs_[k];
        }
        return v;
    }

    /// sum_k |c_k| |t|^k, the rounding scale of operator()(t)
    double magnitude(double t) const
    {
        double v = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            v = v * std::fabs(t) + std::fabs(coeffs_[k]);
        }
        return v;
    }

    double max_abs_coeff() const
    {
        double m = 0.0;
        for (double c : coeffs_) {
            m = std::max(m, std::fabs(c));
        }
        return m;
    }

    Polynomial derivative() const
    {
        if (coeffs_.size() < 2) {
            return Polynomial();
        }
        std::vector<double> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) {
            d[k - 1] = static_cast<double>(k) * coeffs_[k];
        }
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(Polynomial const& a, Polynomial const& b)
    {
        std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
        }
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(double f, Polynomial const& p)
    {
        std::vector<double> c(p.coeffs_);
        for (double& x : c) {
            x *= f;
        }
        return Polynomial(std::move(c));
    }

    /// t * p(t)
    Polynomial shifted() const
    {
        if (coeffs_.empty()) {
            return Polynomial();
        }
        std::vector<double> c(coeffs_.size() + 1, 0.0);
        std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + 1);
        return Polynomial(std::move(c));
    }

  private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0.0) {
            coeffs_.pop_back();
        }
    }

    std::vector<double> coeffs_;
};

namespace detail {

/// Remainder of a / b, leading-coefficient noise below rel_tol dropped.
inline std::vector<double> poly_remainder(std::vector<double> a, std::vector<double> const& b, double rel_tol)
{
    std::size_t const nb = b.size();
    double const lead = b.back();
    while (a.size() >= nb) {
        double const q = a.back() / lead;
        std::size_t const shift = a.size() - nb;
        for (std::size_t k = 0; k < nb; ++k) {
            a[shift + k] -= q * b[k];
        }
        a.pop_back();
    }
    double scale = 0.0;
    for (double c : a) {
        scale = std::max(scale, std::fabs(c));
    }
    while (!a.empty() && std::fabs(a.back()) <= rel_tol * scale) {
        a.pop_back();
    }
    if (scale == 0.0) {
        a.clear();
    }
    return a;
}

inline int sign_changes(std::vector<double> const& values)
{
    int changes = 0;
    int last = 0;
    for (double v : values) {
        int const sg = (v > 0.0) - (v < 0.0);
        if (sg == 0) {
            continue;
        }
        if (last != 0 && sg != last) {
            ++changes;
        }
        last = sg;
    }
    return changes;
}

} // namespace detail

/**
 *  Number of distinct real roots of p in (0, inf), from the Sturm chain
 *  p, p', -rem(p, p'), ... Each member is rescaled to unit max-norm before
 *  the next division. p(0) must be nonzero.
 */
inline int count_positive_roots(Polynomial const& p)
{
    if (p.degree() < 1) {
        return 0;
    }
    constexpr double rel_tol = 1e-11;
    auto normalized = [](std::vector<double> c) {
        double m = 0.0;
        for (double x : c) {
            m = std::max(m, std::fabs(x));
        }
        for (double& x : c) {
            x /= m;
        }
        return c;
    };

    std::vector<std::vector<double>> chain;
    chain.push_back(normalized(p.coeffs()));
    chain.push_back(normalized(p.derivative().coeffs()));
    while (chain.back().size() > 1) {
        auto r = detail::poly_remainder(chain[chain.size() - 2], chain.back(), rel_tol);
        if (r.empty()) {
            break;
        }
        for (double& x : r) {
            x = -x;
        }
        chain.push_back(normalized(std::move(r)));
    }

    std::vector<double> at_zero;
    std::vector<double> at_inf;
    for (auto const& c : chain) {
        at_zero.push_back(c.front());
        at_inf.push_back(c.back());
    }
    return detail::sign_changes(at_zero) - detail::sign_changes(at_inf);
}

} // namespace qes
