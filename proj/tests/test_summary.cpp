#include "dtsim/summary.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

TEST(Quantile, LinearInterpolation) {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
    EXPECT_DOUBLE_EQ(dtsim::quantile(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(dtsim::quantile(v, 0.05), 1.2);
    EXPECT_DOUBLE_EQ(dtsim::quantile(v, 0.5), 3.0);
    EXPECT_DOUBLE_EQ(dtsim::quantile(v, 0.95), 4.8);
    EXPECT_DOUBLE_EQ(dtsim::quantile(v, 1.0), 5.0);
    EXPECT_THROW(dtsim::quantile(std::vector<double>{}, 0.5), std::invalid_argument);
    EXPECT_THROW(dtsim::quantile(v, 1.5), std::invalid_argument);
}

TEST(Summarize, AllZeroErrors) {
    std::vector<dtsim::SwitchError> e(4, {0, dtsim::Approach::GT, 0.0, 37.0, 37.0, 0.0});
    const auto s = dtsim::summarize(e);
    ASSERT_EQ(s.approaches.size(), 1u);
    const auto& g = s.approaches[0];
    EXPECT_EQ(g.count, 4u);
    for (double x : {g.mean, g.median, g.std, g.q05, g.q25, g.q75, g.q95, g.max}) {
        EXPECT_EQ(x, 0.0);
    }
    EXPECT_TRUE(s.comparisons.empty());
}

TEST(Summarize, HandBuiltFixture) {
    // |error| for UAPT is 1..5 (signs mixed), MDTS is {0.5, 1.5}.
    std::istringstream csv(
        "run_id,approach,switch_time_s,perceived_c,actual_c,error_c\n"
        "0,UAPT,3,39,38,1\n"
        "0,UAPT,6,36,38,-2\n"
        "1,UAPT,9,41,38,3\n"
        "1,UAPT,12,34,38,-4\n"
        "2,UAPT,15,43,38,5\n"
        "0,MDTS,3,38.5,38,0.5\n"
        "1,MDTS,6,36.5,38,-1.5\n");
    const auto s = dtsim::summarize(dtsim::read_switch_errors(csv));
    ASSERT_EQ(s.approaches.size(), 2u);
    const auto& u = s.approaches[0];
    EXPECT_EQ(u.approach, dtsim::Approach::UAPT);
    EXPECT_EQ(u.count, 5u);
    EXPECT_DOUBLE_EQ(u.mean, 3.0);
    EXPECT_DOUBLE_EQ(u.median, 3.0);
    EXPECT_NEAR(u.std, std::sqrt(2.5), 1e-15);
    EXPECT_DOUBLE_EQ(u.q05, 1.2);
    EXPECT_DOUBLE_EQ(u.q25, 2.0);
    EXPECT_DOUBLE_EQ(u.q75, 4.0);
    EXPECT_DOUBLE_EQ(u.q95, 4.8);
    EXPECT_DOUBLE_EQ(u.max, 5.0);
    const auto& m = s.approaches[1];
    EXPECT_EQ(m.approach, dtsim::Approach::MDTS);
    EXPECT_DOUBLE_EQ(m.median, 1.0);
    ASSERT_EQ(s.comparisons.size(), 1u);
    EXPECT_EQ(s.comparisons[0].b, dtsim::Approach::UAPT);
    EXPECT_DOUBLE_EQ(s.comparisons[0].ratio, 1.0 / 3.0);

    std::ostringstream out;
    dtsim::write_summary(out, s);
    EXPECT_NE(out.str().find("UAPT,5,3,3,1.58113883,1.2,2,4,4.8,5\n"), std::string::npos) << out.str();
    EXPECT_NE(out.str().find("MDTS/UAPT,0.333333333\n"), std::string::npos) << out.str();
}

TEST(Summarize, EmptyInputIsAnError) {
    EXPECT_THROW(dtsim::summarize(std::vector<dtsim::SwitchError>{}), std::invalid_argument);
}

TEST(SummarizeUncertainties, GroupsByApproachAndKind) {
    const std::vector<dtsim::UncertaintySample> s{
        {0, dtsim::Approach::MDTS, 0.0, 0.005, dtsim::UKind::U},
        {0, dtsim::Approach::MDTS, 3.0, 0.27, dtsim::UKind::U},
        {0, dtsim::Approach::MDTS, 3.0, 0.204, dtsim::UKind::Uprime},
    };
    const auto stats = dtsim::summarize_uncertainties(s);
    ASSERT_EQ(stats.size(), 2u);
    EXPECT_EQ(stats[0].kind, dtsim::UKind::U);
    EXPECT_DOUBLE_EQ(stats[0].min, 0.005);
    EXPECT_DOUBLE_EQ(stats[0].max, 0.27);
    EXPECT_EQ(stats[1].count, 1u);
}
