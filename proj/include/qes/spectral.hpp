#pragma once

/** \file spectral.hpp
 *
 *  \brief Spectral curves W_{j,s}(theta), the truncation points that sit
 *         on them, and the two routes from W back to physical energies:
 *         the self-consistent one and the truncation-based "permitted chi"
 *         construction, kept only to exhibit it as an artifact.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "qes/error.hpp"
#include "qes/frobenius.hpp"
#include "qes/model.hpp"
#include "qes/variational.hpp"

namespace qes {

struct CurveSample
{
    double theta{0.0};
    double W{0.0};
};

/// Sampled graph of one level W_{j,s}(theta).
struct SpectralCurve
{
    double s{0.0};
    int level{0};
    int basis_size{0};
    std::vector<CurveSample> samples; ///< theta strictly increasing

    bool covers(double theta) const
    {
        return !samples.empty() && theta >= samples.front().theta && theta <= samples.back().theta;
    }

    /// Local cubic through the four samples nearest to theta.
    double interpolate(double theta) const
    {
        if (!covers(theta)) {
            throw CoverageError("interpolate: theta = " + std::to_string(theta) + " outside the sampled range");
        }
        std::size_t const n = samples.size();
        std::size_t const width = std::min<std::size_t>(4, n);
        auto const it = std::lower_bound(samples.begin(), samples.end(), theta,
                                         [](CurveSample const& c, double t) { return c.theta < t; });
        auto const idx = static_cast<std::size_t>(it - samples.begin());
        std::size_t start = idx >= 2 ? idx - 2 : 0;
        start = std::min(start, n - width);

        double value = 0.0;
        for (std::size_t a = start; a < start + width; ++a) {
            double basis = 1.0;
            for (std::size_t b = start; b < start + width; ++b) {
                if (b != a) {
                    basis *= (theta - samples[b].theta) / (samples[a].theta - samples[b].theta);
                }
            }
            value += basis * samples[a].W;
        }
        return value;
    }

    /// Indices k with W[k+1] >= W[k]; empty for a curve obeying dW/dtheta < 0.
    std::vector<std::size_t> monotonicity_violations() const
    {
        std::vector<std::size_t> bad;
        for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
            if (!(samples[k + 1].W < samples[k].W)) {
                bad.push_back(k);
            }
        }
        return bad;
    }
};

/// Uniform grid theta_min, theta_min + step, ..., <= theta_max.
inline std::vector<double> uniform_grid(double theta_min, double theta_max, double step)
{
    if (!(step > 0.0) || !(theta_max >= theta_min)) {
        throw DomainError("uniform_grid: need step > 0 and theta_max >= theta_min");
    }
    auto const count = static_cast<std::size_t>(std::floor((theta_max - theta_min) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) {
        grid[k] = theta_min + static_cast<double>(k) * step;
    }
    return grid;
}

/// Adds points centre + (k + 1/2) spacing, k = -per_side .. per_side-1,
/// around every centre; result sorted with near-duplicates removed.
inline std::vector<double> refine_grid(std::vector<double> grid, std::vector<double> const& centres, double spacing,
                                       int per_side = 2)
{
    for (double c : centres) {
        for (int k = -per_side; k < per_side; ++k) {
            grid.push_back(c + (k + 0.5) * spacing);
        }
    }
    std::sort(grid.begin(), grid.end());
    std::vector<double> out;
    for (double t : grid) {
        if (out.empty() || t - out.back() > 1e-9) {
            out.push_back(t);
        }
    }
    return out;
}

/// Curves j = 0..j_max over a strictly increasing grid, one Rayleigh-Ritz
/// solve per grid point (spread over hardware threads).
inline std::vector<SpectralCurve> sweep(double s, int j_max, std::vector<double> const& grid, int basis_size,
                                        Precision precision = Precision::wide)
{
    if (j_max < 0 || j_max + 1 > basis_size) {
        throw DomainError("sweep: need 0 <= j_max < N");
    }
    if (grid.empty()) {
        throw DomainError("sweep: empty theta grid");
    }
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw DomainError("sweep: theta grid must be strictly increasing");
        }
    }
    int const levels = j_max + 1;
    std::vector<std::vector<double>> values(grid.size());

    unsigned const workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                             static_cast<unsigned>(grid.size())));
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t k = w; k < grid.size(); k += workers) {
                values[k] = solve({s, grid[k]}, basis_size, levels, precision).eigenvalues;
            }
        }));
    }
    for (auto& job : jobs) {
        job.get();
    }

    std::vector<SpectralCurve> curves(static_cast<std::size_t>(levels));
    for (int j = 0; j < levels; ++j) {
        curves[static_cast<std::size_t>(j)] = SpectralCurve{s, j, basis_size, {}};
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        auto const& w = values[k];
        for (std::size_t j = 0; j + 1 < w.size(); ++j) {
            // tracking by sorted index assumes levels never meet
            if (!(w[j + 1] - w[j] > 1e-9 * std::max(1.0, std::fabs(w[j])))) {
                throw ConvergenceError("sweep: levels " + std::to_string(j) + " and " + std::to_string(j + 1) +
                                       " nearly cross at theta = " + std::to_string(grid[k]));
            }
        }
        for (std::size_t j = 0; j < w.size(); ++j) {
            curves[j].samples.push_back({grid[k], w[j]});
        }
    }
    return curves;
}

/// All truncation roots theta_s^(n,i) for n <= n_max.
inline std::vector<double> truncation_roots(double s, int n_max)
{
    std::vector<double> roots;
    for (int n = 0; n <= n_max; ++n) {
        auto const sol = truncate(n, s);
        roots.insert(roots.end(), sol.roots.begin(), sol.roots.end());
    }
    return roots;
}

struct OverlayReport
{
    struct Entry
    {
        int n{0};
        int i{0};
        double theta{0.0};
        double W_truncation{0.0};
        double W_curve{0.0};
        double deviation{0.0};
    };

    std::vector<Entry> entries;
    double max_deviation{0.0};
};

/// Places every (theta_s^(n,i), W_s^(n)) with n <= n_max on curve j = i-1.
inline OverlayReport overlay_truncation(double s, int n_max, std::vector<SpectralCurve> const& curves)
{
    if (n_max < 0) {
        throw DomainError("overlay_truncation: n_max must be >= 0");
    }
    auto find_curve = [&](int level) -> SpectralCurve const* {
        for (auto const& c : curves) {
            if (c.level == level && c.s == s) {
                return &c;
            }
        }
        return nullptr;
    };

    OverlayReport report;
    std::ostringstream missing;
    bool uncovered = false;
    for (int n = 0; n <= n_max; ++n) {
        auto const sol = truncate(n, s);
        for (int i = 1; i <= n + 1; ++i) {
            double const theta = sol.roots[static_cast<std::size_t>(i - 1)];
            SpectralCurve const* curve = find_curve(i - 1);
            if (curve == nullptr || !curve->covers(theta)) {
                missing << " (n=" << n << ", i=" << i << ", theta=" << theta << ")";
                uncovered = true;
                continue;
            }
            double const w = curve->interpolate(theta);
            double const dev = std::fabs(w - sol.W);
            report.entries.push_back({n, i, theta, sol.W, w, dev});
            report.max_deviation = std::max(report.max_deviation, dev);
        }
    }
    if (uncovered) {
        throw CoverageError("overlay_truncation: truncation points not covered by the curves:" + missing.str());
    }
    return report;
}

struct PhysicalEnergy
{
    double energy{0.0};
    RadialProblem problem; ///< (s, theta) at the self-consistent energy
    double W{0.0};
    int iterations{0};     ///< eigenvalue solves spent in the root search
    double residual{0.0};  ///< |E^2 - m^2 - p_z^2 - tau W| / E^2
};

/**
 *  Solves E^2 = m^2 + p_z^2 + tau W_j(2 alpha E / sqrt(tau)) for E > 0.
 *  For alpha > 0 the left side increases and the right side decreases in
 *  E (dW/dtheta < 0), so the root is unique.
 */
inline PhysicalEnergy physical_energy(PhysicalParameters const& params, int level, int basis_size,
                                      Precision precision = Precision::wide)
{
    params.validate();
    double const tau = params.tau();
    if (!(tau > 0.0)) {
        throw DomainError("physical_energy: tau = 0, the x^2 normalization collapses");
    }
    if (level < 0) {
        throw DomainError("physical_energy: level must be >= 0");
    }
    double const s = std::sqrt(params.gamma_squared());
    double const rest = params.rest_term();
    int evaluations = 0;

    auto level_value = [&](double theta) {
        ++evaluations;
        return solve({s, theta}, basis_size, level + 1, precision).eigenvalues[static_cast<std::size_t>(level)];
    };
    auto theta_of = [&](double e) { return 2.0 * params.alpha * e / std::sqrt(tau); };
    auto mismatch = [&](double e) { return e * e - rest - tau * level_value(theta_of(e)); };

    PhysicalEnergy out;
    if (params.alpha == 0.0) {
        double const w = level_value(0.0);
        out.energy = energy_from_W(params, w);
        out.problem = {s, 0.0};
        out.W = w;
        out.iterations = 0;
        out.residual = std::fabs(out.energy * out.energy - rest - tau * w) / (out.energy * out.energy);
        return out;
    }

    double const f_lo = mismatch(0.0);
    if (!(f_lo < 0.0)) {
        throw NoSolutionError("physical_energy: no positive energy, mismatch at E = 0 is not negative");
    }
    double const w0 = level_value(0.0);
    if (rest + tau * w0 <= 0.0) {
        throw NoSolutionError("physical_energy: m^2 + p_z^2 + tau W_j(0) <= 0");
    }
    double hi = std::sqrt(rest + tau * w0);
    double f_hi = mismatch(hi);
    for (int grow = 0; f_hi <= 0.0; ++grow) {
        if (grow == 60) {
            throw NoSolutionError("physical_energy: no sign change while bracketing the energy");
        }
        hi *= 2.0;
        f_hi = mismatch(hi);
    }

    std::uintmax_t max_iter = 100;
    auto const bracket = boost::math::tools::toms748_solve(mismatch, 0.0, hi, f_lo, f_hi,
                                                           boost::math::tools::eps_tolerance<double>(50), max_iter);
    if (max_iter >= 100) {
        throw ConvergenceError("physical_energy: root search did not converge");
    }
    double const e = 0.5 * (bracket.first + bracket.second);
    double const theta = theta_of(e);
    double const w = level_value(theta);
    out.energy = e;
    out.problem = {s, theta};
    out.W = w;
    out.iterations = evaluations - 1;
    out.residual = std::fabs(e * e - rest - tau * w) / (e * e);
    return out;
}

/// Tag that callers of permitted_chi must spell out.
struct AcknowledgeTruncationArtifact
{
    explicit AcknowledgeTruncationArtifact() = default;
};
inline constexpr AcknowledgeTruncationArtifact acknowledge_truncation_artifact{};

/// Discrete field value obtained by forcing the truncation condition.
struct PermittedValue
{
    int n{0};
    int i{0};
    double s{0.0};
    int l{0};
    double p_z{0.0};
    double theta{0.0};
    double W{0.0};
    double energy{0.0};
    double tau{0.0};
    double chi{0.0};
    bool artifact_of_truncation{true};
};

/**
 *  Energy, tau and chi that put the physical problem exactly on the
 *  truncation root theta_s^(n,i):
 *
 *      E^2 = (m^2 + p_z^2) / (1 - 4 alpha^2 W / theta^2),
 *      tau = (2 alpha E / theta)^2,  chi = tau sqrt(2 / (g b)).
 *
 *  These values are an artifact of the truncation: the equation has bound
 *  states for every theta. params.chi is ignored.
 */
inline PermittedValue permitted_chi(PhysicalParameters const& params, int n, int i, AcknowledgeTruncationArtifact)
{
    params.validate();
    double const s = std::sqrt(params.gamma_squared());
    auto const sol = truncate(n, s);
    if (i < 1 || i > n + 1) {
        throw DomainError("permitted_chi: root index " + std::to_string(i) + " outside 1.." + std::to_string(n + 1));
    }
    double const theta = sol.roots[static_cast<std::size_t>(i - 1)];
    if (theta == 0.0) {
        throw DomainError("chi unconstrained: root theta = 0 carries no Coulomb coupling");
    }
    if (params.alpha == 0.0 || (theta > 0.0) != (params.alpha > 0.0)) {
        throw NoSolutionError("permitted_chi: sign of theta = " + std::to_string(theta) +
                              " incompatible with E > 0 and alpha = " + std::to_string(params.alpha));
    }
    double const denom = 1.0 - 4.0 * params.alpha * params.alpha * sol.W / (theta * theta);
    if (!(denom > 0.0)) {
        throw NoSolutionError("permitted_chi: 1 - 4 alpha^2 W / theta^2 = " + std::to_string(denom) + " <= 0");
    }
    double const rest = params.rest_term();
    if (!(rest > 0.0)) {
        throw NoSolutionError("permitted_chi: m^2 + p_z^2 = 0 forces E = 0 and tau = 0");
    }
    double const e = std::sqrt(rest / denom);
    double const root_tau = 2.0 * params.alpha * e / theta;
    double const tau = root_tau * root_tau;

    PermittedValue v;
    v.n = n;
    v.i = i;
    v.s = s;
    v.l = params.l;
    v.p_z = params.p_z;
    v.theta = theta;
    v.W = sol.W;
    v.energy = e;
    v.tau = tau;
    v.chi = tau * std::sqrt(2.0 / (params.g * params.b));
    return v;
}

/// |theta(E, chi) - theta_s^(n,i)| after feeding chi back through reduce().
inline double permitted_roundtrip_residual(PhysicalParameters params, PermittedValue const& v)
{
    params.chi = v.chi;
    return std::fabs(reduce(params, v.energy).theta - v.theta);
}

} // namespace qes
