#pragma once

/** \file model.hpp
 *
 *  \brief Physical parameter block and its reduction to the dimensionless
 *         radial problem
 *
 *      F'' + F'/x - s^2 F/x^2 + theta F/x - x^2 F + W F = 0,
 *
 *  with s = |gamma|, gamma^2 = l^2 - alpha^2, tau^2 = g b chi^2 / 2,
 *  theta = 2 alpha E / sqrt(tau) and W = (E^2 - m^2 - p_z^2) / tau.
 *  Natural units (hbar = c = 1) throughout.
 */

#include <cmath>
#include <string>

#include "qes/error.hpp"

namespace qes {

/// Physical inputs of the Klein-Gordon-type radial problem.
struct PhysicalParameters
{
    double m{1.0};     ///< particle mass
    double p_z{0.0};   ///< momentum along the free z direction
    double alpha{0.0}; ///< Coulomb-type coupling strength
    int l{0};          ///< rotational quantum number
    double g{1.0};     ///< coupling constant, > 0
    double b{1.0};     ///< -(K_HB)_zz, > 0
    double chi{0.0};   ///< magnetic-field parameter

    /// gamma^2 = l^2 - alpha^2
    double gamma_squared() const { return static_cast<double>(l) * l - alpha * alpha; }

    /// tau = sqrt(g b / 2) |chi| (tau >= 0 regardless of the sign of chi).
    double tau() const { return std::sqrt(0.5 * g * b) * std::fabs(chi); }

    /// m^2 + p_z^2
    double rest_term() const { return m * m + p_z * p_z; }

    void validate() const
    {
        if (!std::isfinite(m) || !std::isfinite(p_z) || !std::isfinite(alpha) || !std::isfinite(chi)) {
            throw DomainError("physical parameters must be finite");
        }
        if (!(g > 0.0) || !(b > 0.0)) {
            throw DomainError("coupling g and tensor component b must be positive");
        }
        if (gamma_squared() < 0.0) {
            throw DomainError("imaginary gamma: l^2 = " + std::to_string(l * l) + " < alpha^2 = " +
                              std::to_string(alpha * alpha));
        }
    }
};

/// The dimensionless eigenproblem: exponent s = |gamma| and Coulomb
/// coefficient theta. Any theta admits bound states.
struct RadialProblem
{
    double s{0.0};
    double theta{0.0};

    void validate() const
    {
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw DomainError("radial exponent s must be finite and >= 0");
        }
        if (!std::isfinite(theta)) {
            throw DomainError("theta must be finite");
        }
    }
};

/// s = sqrt(l^2 - alpha^2) from the physical block alone.
inline double radial_exponent(PhysicalParameters const& params)
{
    params.validate();
    return std::sqrt(params.gamma_squared());
}

/// Maps the physical block at energy E onto (s, theta).
inline RadialProblem reduce(PhysicalParameters const& params, double energy)
{
    params.validate();
    double const tau = params.tau();
    if (!(tau > 0.0)) {
        throw DomainError("degenerate scaling: tau = 0 collapses the x^2 normalization");
    }
    return RadialProblem{std::sqrt(params.gamma_squared()), 2.0 * params.alpha * energy / std::sqrt(tau)};
}

enum class EnergyBranch
{
    positive,
    negative ///< antiparticle branch E < 0
};

/// E = ±sqrt(m^2 + p_z^2 + tau W).
inline double energy_from_W(PhysicalParameters const& params, double W,
                            EnergyBranch branch = EnergyBranch::positive)
{
    params.validate();
    double const radicand = params.rest_term() + params.tau() * W;
    if (radicand < 0.0) {
        throw DomainError("no real energy: m^2 + p_z^2 + tau W = " + std::to_string(radicand) + " < 0");
    }
    double const e = std::sqrt(radicand);
    return branch == EnergyBranch::positive ? e : -e;
}

} // namespace qes
