#include "dtsim/rng.hpp"
#include "dtsim/uncertain.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using dtsim::UncertainBool;
using dtsim::UncertainReal;

namespace {

/// Empirical P(A < B) for independent Normals.
double mc_lt(const UncertainReal& a, const UncertainReal& b, int samples, std::uint64_t seed) {
    dtsim::RngStream rng(seed, "test/mc");
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
        const double x = a.mean() + a.std() * rng.normal();
        const double y = b.mean() + b.std() * rng.normal();
        hits += x < y ? 1 : 0;
    }
    return static_cast<double>(hits) / samples;
}

}  // namespace

TEST(UncertainReal, RejectsNegativeStd) {
    EXPECT_THROW(UncertainReal(1.0, -0.1), std::invalid_argument);
    EXPECT_THROW(UncertainReal(1.0, std::nan("")), std::invalid_argument);
    EXPECT_NO_THROW(UncertainReal(1.0, 0.0));
}

TEST(UncertainReal, AddUsesQuadrature) {
    const auto s = UncertainReal(2.0, 0.3) + UncertainReal(2.5, 0.25);
    EXPECT_DOUBLE_EQ(s.mean(), 4.5);
    EXPECT_NEAR(s.std(), 0.390512, 1e-6);

    const auto twice = UncertainReal(1.0, 0.1) + UncertainReal(1.0, 0.1);
    EXPECT_DOUBLE_EQ(twice.mean(), 2.0);
    EXPECT_NEAR(twice.std(), 0.141421, 1e-6);

    const UncertainReal x(7.25, 0.4);
    const auto same = x + UncertainReal(0.0);
    EXPECT_DOUBLE_EQ(same.mean(), x.mean());
    EXPECT_DOUBLE_EQ(same.std(), x.std());
}

TEST(UncertainReal, SubtractKeepsQuadratureStd) {
    const auto d = UncertainReal(2.0, 0.3) - UncertainReal(2.5, 0.25);
    EXPECT_DOUBLE_EQ(d.mean(), -0.5);
    EXPECT_NEAR(d.std(), 0.390512, 1e-6);
}

TEST(UncertainReal, Scale) {
    const auto neg = -1.0 * UncertainReal(3.0, 0.2);
    EXPECT_DOUBLE_EQ(neg.mean(), -3.0);
    EXPECT_DOUBLE_EQ(neg.std(), 0.2);

    const auto zero = 0.0 * UncertainReal(5.0, 0.7);
    EXPECT_DOUBLE_EQ(zero.mean(), 0.0);
    EXPECT_DOUBLE_EQ(zero.std(), 0.0);

    const auto half = 0.5 * UncertainReal(2.0, 0.289);
    EXPECT_DOUBLE_EQ(half.mean(), 1.0);
    EXPECT_NEAR(half.std(), 0.1445, 1e-12);
}

TEST(UncertainReal, MulFirstOrder) {
    const auto p = UncertainReal(2.0, 0.1) * UncertainReal(3.0, 0.2);
    EXPECT_DOUBLE_EQ(p.mean(), 6.0);
    EXPECT_NEAR(p.std(), 0.5, 1e-12);

    const auto id = UncertainReal(4.2, 0.3) * UncertainReal(1.0);
    EXPECT_DOUBLE_EQ(id.mean(), 4.2);
    EXPECT_DOUBLE_EQ(id.std(), 0.3);

    const auto z = UncertainReal(0.0) * UncertainReal(9.0, 0.5);
    EXPECT_DOUBLE_EQ(z.mean(), 0.0);
    EXPECT_DOUBLE_EQ(z.std(), 0.0);
}

TEST(UncertainReal, DivFirstOrder) {
    const auto q = UncertainReal(6.0, 0.3) / UncertainReal(3.0, 0.3);
    EXPECT_DOUBLE_EQ(q.mean(), 2.0);
    // |6/3| * sqrt((0.3/6)^2 + (0.3/3)^2)
    EXPECT_NEAR(q.std(), 2.0 * std::hypot(0.05, 0.1), 1e-12);
    EXPECT_THROW(UncertainReal(1.0, 0.1) / UncertainReal(0.0, 0.1), std::domain_error);
    EXPECT_NO_THROW(UncertainReal(0.0, 0.1) / UncertainReal(2.0, 0.1));
}

TEST(UncertainReal, LtProbAgainstClosedFormAndReferenceBracket) {
    const auto p = dtsim::lt_prob(UncertainReal(2.0, 0.3), UncertainReal(2.5, 0.25));
    EXPECT_NEAR(p.confidence(), 0.8998, 1e-4);
    EXPECT_GE(p.confidence(), 0.883);
    EXPECT_LE(p.confidence(), 0.910);
}

TEST(UncertainReal, LtProbSymmetricCaseIsHalf) {
    const UncertainReal x(37.0, 0.2);
    EXPECT_DOUBLE_EQ(dtsim::lt_prob(x, x).confidence(), 0.5);
}

TEST(UncertainReal, LtProbFarApartMatchesMonteCarlo) {
    const UncertainReal a(0.0, 0.1);
    const UncertainReal b(1.0, 0.1);
    const double p = dtsim::lt_prob(a, b).confidence();
    EXPECT_NEAR(p, 1.0, 1e-9);
    EXPECT_NEAR(mc_lt(a, b, 10'000'000, 3), p, 1e-3);
}

TEST(UncertainReal, LtProbCrispIsStrict) {
    EXPECT_DOUBLE_EQ(dtsim::lt_prob(UncertainReal(1.0), UncertainReal(2.0)).confidence(), 1.0);
    EXPECT_DOUBLE_EQ(dtsim::lt_prob(UncertainReal(2.0), UncertainReal(1.0)).confidence(), 0.0);
    EXPECT_DOUBLE_EQ(dtsim::lt_prob(UncertainReal(2.0), UncertainReal(2.0)).confidence(), 0.0);
}

TEST(UncertainReal, DecideBoundaryIsInclusive) {
    EXPECT_TRUE(dtsim::decide(UncertainBool(0.987), 0.95));
    EXPECT_TRUE(dtsim::decide(UncertainBool(0.95), 0.95));
    EXPECT_FALSE(dtsim::decide(UncertainBool(0.312), 0.95));
    EXPECT_THROW(dtsim::decide(UncertainBool(0.5), 0.0), std::invalid_argument);
    EXPECT_THROW(dtsim::decide(UncertainBool(0.5), 1.0), std::invalid_argument);
}

TEST(UncertainBool, RangeAndNegation) {
    EXPECT_THROW(UncertainBool(-0.01), std::invalid_argument);
    EXPECT_THROW(UncertainBool(1.01), std::invalid_argument);
    EXPECT_DOUBLE_EQ((!UncertainBool(0.3)).confidence(), 0.7);
}

TEST(UncertainReal, EqualityInDistribution) {
    EXPECT_TRUE(dtsim::eq_in_distribution({2.0, 0.3}, {2.0, 0.3}, 0.0));
    EXPECT_FALSE(dtsim::eq_in_distribution({2.0, 0.3}, {2.0, 0.31}, 0.005));
    EXPECT_TRUE(dtsim::eq_in_distribution({2.0, 0.3}, {2.001, 0.3}, 0.01));
    EXPECT_THROW(dtsim::eq_in_distribution({2.0, 0.3}, {2.0, 0.3}, -1.0), std::invalid_argument);
}

TEST(UncertainReal, NormalCdfReferenceValues) {
    EXPECT_DOUBLE_EQ(dtsim::normal_cdf(0.0), 0.5);
    EXPECT_NEAR(dtsim::normal_cdf(1.6448536269514722), 0.95, 1e-14);
    EXPECT_NEAR(dtsim::normal_cdf(-1.959963984540054), 0.025, 1e-14);
    EXPECT_NEAR(dtsim::normal_cdf(-10.0), 7.61985302416047e-24, 1e-35);
}

TEST(UncertainReal, StreamsAsMeanPlusMinusStd) {
    std::ostringstream os;
    os << UncertainReal(37.5, 0.25);
    EXPECT_EQ(os.str(), "37.5+-0.25");
}

class UncertainProperties : public ::testing::Test {
protected:
    dtsim::RngStream rng{42, "test/properties"};
    UncertainReal draw() { return {rng.uniform(-50.0, 50.0), rng.uniform(0.0, 3.0)}; }
};

TEST_F(UncertainProperties, QuadratureNeverShrinks) {
    for (int i = 0; i < 10000; ++i) {
        const auto a = draw();
        const auto b = draw();
        EXPECT_GE((a + b).std(), std::max(a.std(), b.std()));
    }
}

TEST_F(UncertainProperties, AddAndMulCommute) {
    for (int i = 0; i < 10000; ++i) {
        const auto a = draw();
        const auto b = draw();
        EXPECT_NEAR((a + b).mean(), (b + a).mean(), 1e-12);
        EXPECT_NEAR((a + b).std(), (b + a).std(), 1e-12);
        EXPECT_NEAR((a * b).mean(), (b * a).mean(), 1e-12);
        EXPECT_NEAR((a * b).std(), (b * a).std(), 1e-12);
    }
}

TEST_F(UncertainProperties, LtProbComplements) {
    for (int i = 0; i < 10000; ++i) {
        const auto a = draw();
        const auto b = draw();
        if (a.is_crisp() && b.is_crisp()) {
            continue;
        }
        EXPECT_NEAR(dtsim::lt_prob(a, b).confidence() + dtsim::lt_prob(b, a).confidence(), 1.0, 1e-9);
    }
}

TEST_F(UncertainProperties, ScaleRoundTrip) {
    for (int i = 0; i < 10000; ++i) {
        const auto a = draw();
        double k = rng.uniform(-10.0, 10.0);
        if (std::abs(k) < 1e-3) {
            k = 1.0;
        }
        const auto back = dtsim::scale(k, dtsim::scale(1.0 / k, a));
        EXPECT_NEAR(back.mean(), a.mean(), 1e-12 * std::max(1.0, std::abs(a.mean())));
        EXPECT_NEAR(back.std(), a.std(), 1e-12 * std::max(1.0, a.std()));
    }
}

TEST_F(UncertainProperties, LtProbMatchesMonteCarloWithinThreeStandardErrors) {
    constexpr int samples = 1'000'000;
    for (int i = 0; i < 5; ++i) {
        const UncertainReal a(rng.uniform(-1.0, 1.0), rng.uniform(0.01, 1.0));
        const UncertainReal b(rng.uniform(-1.0, 1.0), rng.uniform(0.01, 1.0));
        const double p = dtsim::lt_prob(a, b).confidence();
        const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / samples);
        EXPECT_NEAR(mc_lt(a, b, samples, 100 + i), p, 3.0 * se + 1e-6) << a << " < " << b;
    }
}
