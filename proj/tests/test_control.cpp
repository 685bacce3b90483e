#include "dtsim/control.hpp"
#include "dtsim/rng.hpp"

#include <gtest/gtest.h>

using dtsim::ControlBand;
using dtsim::ControllerState;
using dtsim::UncertainReal;

namespace {

ControllerState heater(bool on) {
    ControllerState st;
    st.heater_on = on;
    return st;
}

}  // namespace

TEST(ClassicalDecide, Thresholds) {
    const ControlBand band;
    EXPECT_FALSE(dtsim::classical_decide(38.1, heater(true), band).heater_on);
    EXPECT_TRUE(dtsim::classical_decide(35.9, heater(false), band).heater_on);
    EXPECT_TRUE(dtsim::classical_decide(37.0, heater(true), band).heater_on);
    EXPECT_FALSE(dtsim::classical_decide(37.0, heater(false), band).heater_on);
}

TEST(ClassicalDecide, BoundariesAreInclusive) {
    const ControlBand band;
    EXPECT_FALSE(dtsim::classical_decide(38.0, heater(true), band).heater_on);
    EXPECT_TRUE(dtsim::classical_decide(36.0, heater(false), band).heater_on);
}

TEST(ClassicalDecide, RecordsDecisionTime) {
    EXPECT_DOUBLE_EQ(dtsim::classical_decide(37.0, heater(false), {}, 42.0).last_decision_time, 42.0);
}

TEST(UaDecide, ConfidentExceedanceSwitchesOff) {
    // P(temp > 38) = Phi(0.2 / 0.09) = 0.987
    EXPECT_NEAR(dtsim::gt_prob(UncertainReal(38.2, 0.09), UncertainReal(38.0)).confidence(), 0.987, 1e-3);
    EXPECT_FALSE(dtsim::ua_decide({38.2, 0.09}, heater(true), {}).heater_on);
}

TEST(UaDecide, UnconfidentExceedanceHolds) {
    // P(temp > 38) = Phi(-0.49) = 0.312
    EXPECT_NEAR(dtsim::gt_prob(UncertainReal(37.9, 0.204), UncertainReal(38.0)).confidence(), 0.312, 1e-3);
    EXPECT_TRUE(dtsim::ua_decide({37.9, 0.204}, heater(true), {}).heater_on);
}

TEST(UaDecide, ConfidentlyColdSwitchesOn) {
    EXPECT_TRUE(dtsim::ua_decide({35.5, 0.204}, heater(false), {}).heater_on);
    EXPECT_FALSE(dtsim::ua_decide({35.9, 0.204}, heater(false), {}).heater_on);
}

TEST(UaDecide, OneSidedConfidence) {
    ControlBand band;
    band.sides = dtsim::ConfidenceSides::OffOnly;
    // The on-side falls back to the crisp mean test.
    EXPECT_TRUE(dtsim::ua_decide({35.9, 0.204}, heater(false), band).heater_on);
    EXPECT_TRUE(dtsim::ua_decide({38.1, 0.204}, heater(true), band).heater_on);

    band.sides = dtsim::ConfidenceSides::OnOnly;
    EXPECT_FALSE(dtsim::ua_decide({38.1, 0.204}, heater(true), band).heater_on);
    EXPECT_FALSE(dtsim::ua_decide({35.9, 0.204}, heater(false), band).heater_on);
}

TEST(UaDecide, CrispInputMatchesClassicalOffThresholds) {
    const ControlBand band;
    dtsim::RngStream rng(5, "test/control");
    ControllerState a;
    ControllerState b;
    for (int i = 0; i < 20000; ++i) {
        double t = rng.uniform(34.0, 40.0);
        if (t == band.t_low || t == band.t_high) {
            continue;
        }
        a = dtsim::classical_decide(t, a, band);
        b = dtsim::ua_decide(UncertainReal(t), b, band);
        ASSERT_EQ(a.heater_on, b.heater_on) << "temp " << t;
    }
}

TEST(UaDecide, InsideBandNeverToggles) {
    dtsim::RngStream rng(6, "test/control");
    for (int i = 0; i < 10000; ++i) {
        const UncertainReal t(rng.uniform(36.5, 37.5), rng.uniform(0.0, 0.3));
        const bool on = rng.uniform01() < 0.5;
        EXPECT_EQ(dtsim::ua_decide(t, heater(on), {}).heater_on, on);
    }
}

TEST(UaDecide, SmallerStdSwitchesOffAtSmallerExceedance) {
    const ControlBand band;
    auto first_off = [&](double sd) {
        for (double m = 38.0; m < 40.0; m += 1e-4) {
            if (!dtsim::ua_decide({m, sd}, heater(true), band).heater_on) {
                return m;
            }
        }
        return 40.0;
    };
    double previous = 0.0;
    for (double sd : {0.01, 0.05, 0.1, 0.2, 0.3}) {
        const double m = first_off(sd);
        EXPECT_GT(m, previous);
        previous = m;
    }
}

TEST(SafeMode, LatchesHeaterOff) {
    const auto s = dtsim::enter_safe_mode(heater(true));
    EXPECT_TRUE(s.safe_mode);
    EXPECT_FALSE(s.heater_on);
    const auto again = dtsim::enter_safe_mode(s);
    EXPECT_TRUE(again.safe_mode);
    EXPECT_FALSE(again.heater_on);
    EXPECT_FALSE(dtsim::classical_decide(20.0, s, {}).heater_on);
    EXPECT_FALSE(dtsim::ua_decide({20.0, 0.1}, s, {}).heater_on);
    EXPECT_TRUE(dtsim::ua_decide({20.0, 0.1}, s, {}).safe_mode);
}

TEST(ControlBand, Validate) {
    ControlBand band;
    EXPECT_NO_THROW(band.validate());
    band.t_low = 38.0;
    EXPECT_THROW(band.validate(), std::invalid_argument);
    band = {};
    band.confidence = 1.0;
    EXPECT_THROW(band.validate(), std::invalid_argument);
}

TEST(ConfidenceSides, RoundTrip) {
    for (auto s : {dtsim::ConfidenceSides::Both, dtsim::ConfidenceSides::OffOnly, dtsim::ConfidenceSides::OnOnly}) {
        EXPECT_EQ(dtsim::parse_confidence_sides(dtsim::to_string(s)), s);
    }
    EXPECT_THROW(dtsim::parse_confidence_sides("sometimes"), std::invalid_argument);
}
