#pragma once

#include "dtsim/uncertain.hpp"

#include <string_view>

namespace dtsim {

/// Which threshold tests of the uncertainty-aware controller require the
/// confidence level. The other side falls back to a crisp mean comparison.
enum class ConfidenceSides { Both, OffOnly, OnOnly };

struct ControlBand {
    double t_low = 36.0;      // degC, heater on at or below
    double t_high = 38.0;     // degC, heater off at or above
    double confidence = 0.95; // for the uncertainty-aware variant
    ConfidenceSides sides = ConfidenceSides::Both;

    void validate() const;
};

struct ControllerState {
    bool heater_on = false;
    bool safe_mode = false;
    double last_decision_time = 0.0;
};

/// Crisp hysteresis: off at temp >= t_high, on at temp <= t_low, else hold.
/// A controller in safe mode is returned unchanged.
ControllerState classical_decide(double temp, const ControllerState& st, const ControlBand& band,
                                 double time = 0.0);

/// Stochastic hysteresis: off when P(temp > t_high) reaches the confidence
/// level, on when P(temp < t_low) does, else hold.
ControllerState ua_decide(const UncertainReal& temp, const ControllerState& st, const ControlBand& band,
                          double time = 0.0);

/// Absorbing: heater off for the rest of the run.
ControllerState enter_safe_mode(const ControllerState& st);

ConfidenceSides parse_confidence_sides(std::string_view text);
std::string_view to_string(ConfidenceSides sides);

}  // namespace dtsim
