#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qes/model.hpp"

namespace {

// tau = sqrt(g b / 2) |chi|; with g = 2, b = 1 this is |chi|.
qes::PhysicalParameters with_tau(double tau)
{
    qes::PhysicalParameters p;
    p.g = 2.0;
    p.b = 1.0;
    p.chi = tau;
    return p;
}

} // namespace

TEST(Model, ReduceWithoutCoulombTerm)
{
    auto p = with_tau(1.0);
    p.alpha = 0.0;
    p.l = 1;
    for (double e : {0.3, 1.0, 7.5}) {
        auto const r = qes::reduce(p, e);
        EXPECT_EQ(r.s, 1.0);
        EXPECT_EQ(r.theta, 0.0);
    }
}

TEST(Model, ReduceAtGammaZeroBoundary)
{
    auto p = with_tau(1.0);
    p.alpha = 1.0;
    p.l = 1;
    EXPECT_EQ(qes::reduce(p, 2.0).s, 0.0);
}

TEST(Model, ReduceClosedForms)
{
    auto p = with_tau(1.0);
    p.m = 1.0;
    p.alpha = 0.1;
    p.l = 1;
    auto const r = qes::reduce(p, 1.0);
    EXPECT_NEAR(r.s, std::sqrt(0.99), 1e-15);
    EXPECT_NEAR(r.theta, 0.2, 1e-15);
}

TEST(Model, ReduceRejectsImaginaryGamma)
{
    auto p = with_tau(1.0);
    p.alpha = 1.5;
    p.l = 1;
    EXPECT_THROW(qes::reduce(p, 1.0), qes::DomainError);
}

TEST(Model, ReduceRejectsZeroTau)
{
    auto p = with_tau(0.0);
    p.l = 1;
    EXPECT_THROW(qes::reduce(p, 1.0), qes::DomainError);
}

TEST(Model, TauIgnoresSignOfChi)
{
    EXPECT_EQ(with_tau(-3.0).tau(), with_tau(3.0).tau());
    qes::PhysicalParameters p;
    p.g = 0.5;
    p.b = 4.0;
    p.chi = 2.0;
    EXPECT_DOUBLE_EQ(p.tau(), 2.0);
}

TEST(Model, EnergyFromW)
{
    auto p = with_tau(0.0);
    p.m = 1.0;
    EXPECT_EQ(qes::energy_from_W(p, 123.0), 1.0);

    p = with_tau(1.0);
    p.m = 0.0;
    EXPECT_DOUBLE_EQ(qes::energy_from_W(p, 4.0), 2.0);

    p = with_tau(2.0);
    p.m = 1.0;
    p.p_z = 1.0;
    EXPECT_NEAR(qes::energy_from_W(p, 4.0), std::sqrt(10.0), 1e-15);
    EXPECT_NEAR(qes::energy_from_W(p, 4.0, qes::EnergyBranch::negative), -std::sqrt(10.0), 1e-15);
}

TEST(Model, EnergyFromWNegativeRadicand)
{
    auto p = with_tau(1.0);
    p.m = 1.0;
    EXPECT_THROW(qes::energy_from_W(p, -2.0), qes::DomainError);
}

TEST(Model, ReduceScalesLinearlyInAlpha)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = with_tau(u(rng));
        p.l = 5;
        p.alpha = u(rng);
        double const e = u(rng);
        auto const r1 = qes::reduce(p, e);
        auto p2 = p;
        p2.alpha = 2.0 * p.alpha;
        auto const r2 = qes::reduce(p2, e);
        EXPECT_EQ(r2.theta, 2.0 * r1.theta);
        EXPECT_EQ(r2.s, std::sqrt(25.0 - 4.0 * p.alpha * p.alpha));
    }
}

TEST(Model, EnergySquaredRecoversTauW)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = with_tau(u(rng) + 0.1);
        p.m = u(rng);
        p.p_z = u(rng) - 1.5;
        double const w = u(rng) * 5.0;
        double const e = qes::energy_from_W(p, w);
        double const lhs = e * e - p.rest_term();
        EXPECT_NEAR(lhs, p.tau() * w, 8 * std::numeric_limits<double>::epsilon() * (e * e));
    }
}
