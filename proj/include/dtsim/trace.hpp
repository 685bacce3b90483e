#pragma once

#include "dtsim/scenario.hpp"

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace dtsim {

enum class Event { None, SwitchOn, SwitchOff, Reset, Diverged, SafeMode };

std::string_view to_string(Event e);
Event parse_event(std::string_view text);

/// One row per solver step. Optional fields are written as empty CSV
/// cells when they do not apply to the approach.
struct TraceRow {
    double time = 0.0;
    double t_true = 0.0;
    std::optional<double> perceived_mean; // value the controller last acted on
    std::optional<double> perceived_std;
    std::optional<double> u_pt;
    std::optional<double> u_dt;
    std::optional<double> u_mitigated;
    bool heater_on = false;
    Event event = Event::None;
};

struct SwitchError {
    int run_id = 0;
    Approach approach = Approach::GT;
    double switch_time = 0.0;
    double perceived = 0.0;
    double actual = 0.0;
    double error = 0.0; // perceived - actual
};

/// U: twin box std. Uprime: sensor-side std. mu: fused std.
enum class UKind { U, Uprime, Mu };

std::string_view to_string(UKind k);
UKind parse_ukind(std::string_view text);

struct UncertaintySample {
    int run_id = 0;
    Approach approach = Approach::GT;
    double time = 0.0;
    double value = 0.0;
    UKind kind = UKind::U;
};

inline constexpr std::string_view kTraceHeader =
    "time_s,t_true,t_perceived_mean,t_perceived_std,u_pt,u_dt,u_mitigated,heater_on,event";
inline constexpr std::string_view kSwitchHeader = "run_id,approach,switch_time_s,perceived_c,actual_c,error_c";
inline constexpr std::string_view kUncertaintyHeader = "run_id,approach,time_s,u_value,u_kind";

/// Nine significant digits, as in every CSV this library writes.
std::string format_real(double v);

void write_trace_header(std::ostream& os);
void write_trace_row(std::ostream& os, const TraceRow& row);
void write_trace(std::ostream& os, const std::vector<TraceRow>& rows);

void write_switch_header(std::ostream& os);
void write_switch_error(std::ostream& os, const SwitchError& e);

void write_uncertainty_header(std::ostream& os);
void write_uncertainty(std::ostream& os, const UncertaintySample& s);

/// Readers validate the header and throw std::runtime_error with the line
/// number on malformed rows.
std::vector<TraceRow> read_trace(std::istream& is);
std::vector<SwitchError> read_switch_errors(std::istream& is);
std::vector<UncertaintySample> read_uncertainties(std::istream& is);

}  // namespace dtsim
