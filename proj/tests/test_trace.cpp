#include "dtsim/trace.hpp"

#include <gtest/gtest.h>

#include <sstream>

using dtsim::TraceRow;

TEST(TraceCsv, HeaderIsExact) {
    std::ostringstream os;
    dtsim::write_trace(os, {});
    EXPECT_EQ(os.str(), "time_s,t_true,t_perceived_mean,t_perceived_std,u_pt,u_dt,u_mitigated,heater_on,event\n");
}

TEST(TraceCsv, NineSignificantDigitsAndEmptyCells) {
    TraceRow r;
    r.time = 603.1;
    r.t_true = 37.123456789123;
    r.perceived_mean = 1.0 / 3.0;
    r.heater_on = true;
    r.event = dtsim::Event::SwitchOn;
    std::ostringstream os;
    dtsim::write_trace_row(os, r);
    EXPECT_EQ(os.str(), "603.1,37.1234568,0.333333333,,,,,1,SWITCH_ON\n");
}

TEST(TraceCsv, RoundTrip) {
    std::vector<TraceRow> rows(3);
    rows[0] = {0.0, 21.0, 21.0, 0.0, std::nullopt, std::nullopt, std::nullopt, true, dtsim::Event::None};
    rows[1] = {0.1, 21.5, 21.25, 0.204124145, 0.204124145, 0.05, 0.04, true, dtsim::Event::Reset};
    rows[2] = {0.2, 22.0, 21.25, 0.204124145, 0.204124145, 0.06, std::nullopt, false, dtsim::Event::SafeMode};
    std::stringstream ss;
    dtsim::write_trace(ss, rows);
    const auto back = dtsim::read_trace(ss);
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back[1].event, dtsim::Event::Reset);
    EXPECT_DOUBLE_EQ(*back[1].u_mitigated, 0.04);
    EXPECT_FALSE(back[0].u_pt.has_value());
    EXPECT_FALSE(back[2].heater_on);
    std::ostringstream again;
    dtsim::write_trace(again, back);
    EXPECT_EQ(again.str(), ss.str());
}

TEST(TraceCsv, RejectsWrongHeaderAndShortRows) {
    std::istringstream bad_header("time,t\n");
    EXPECT_THROW(dtsim::read_trace(bad_header), std::runtime_error);
    std::istringstream short_row(std::string(dtsim::kTraceHeader) + "\n1,2,3\n");
    EXPECT_THROW(dtsim::read_trace(short_row), std::runtime_error);
    std::istringstream bad_event(std::string(dtsim::kTraceHeader) + "\n0,21,,,,,,0,BOOM\n");
    EXPECT_THROW(dtsim::read_trace(bad_event), std::runtime_error);
}

TEST(SwitchCsv, RoundTrip) {
    const dtsim::SwitchError e{7, dtsim::Approach::MDTS, 612.0, 37.95, 38.05, 37.95 - 38.05};
    std::stringstream ss;
    dtsim::write_switch_header(ss);
    dtsim::write_switch_error(ss, e);
    EXPECT_EQ(ss.str(), "run_id,approach,switch_time_s,perceived_c,actual_c,error_c\n7,MDTS,612,37.95,38.05,-0.1\n");
    const auto back = dtsim::read_switch_errors(ss);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].run_id, 7);
    EXPECT_EQ(back[0].approach, dtsim::Approach::MDTS);
    EXPECT_DOUBLE_EQ(back[0].actual, 38.05);
}

TEST(UncertaintyCsv, RoundTrip) {
    std::stringstream ss;
    dtsim::write_uncertainty_header(ss);
    dtsim::write_uncertainty(ss, {0, dtsim::Approach::UAPT, 3.0, 0.2041241452319315, dtsim::UKind::Uprime});
    dtsim::write_uncertainty(ss, {0, dtsim::Approach::MDTS, 6.0, 0.15, dtsim::UKind::Mu});
    EXPECT_EQ(ss.str(), "run_id,approach,time_s,u_value,u_kind\n0,UAPT,3,0.204124145,Uprime\n0,MDTS,6,0.15,mu\n");
    const auto back = dtsim::read_uncertainties(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].kind, dtsim::UKind::Mu);
}
