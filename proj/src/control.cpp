#include "dtsim/control.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace dtsim {

void ControlBand::validate() const {
    if (!(t_low < t_high)) {
        throw std::invalid_argument(fmt::format("band.t_low ({}) must be below band.t_high ({})", t_low, t_high));
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument(fmt::format("band.confidence must lie in (0,1), got {}", confidence));
    }
}

ControllerState classical_decide(double temp, const ControllerState& st, const ControlBand& band, double time) {
    if (st.safe_mode) {
        return st;
    }
    ControllerState next = st;
    next.last_decision_time = time;
    if (temp >= band.t_high) {
        next.heater_on = false;
    } else if (temp <= band.t_low) {
        next.heater_on = true;
    }
    return next;
}

ControllerState ua_decide(const UncertainReal& temp, const ControllerState& st, const ControlBand& band,
                          double time) {
    if (st.safe_mode) {
        return st;
    }
    const UncertainReal high(band.t_high);
    const UncertainReal low(band.t_low);

    const bool off_uses_confidence = band.sides != ConfidenceSides::OnOnly;
    const bool on_uses_confidence = band.sides != ConfidenceSides::OffOnly;

    const bool too_hot = off_uses_confidence ? decide(lt_prob(high, temp), band.confidence)
                                             : temp.mean() >= band.t_high;
    const bool too_cold = on_uses_confidence ? decide(lt_prob(temp, low), band.confidence)
                                             : temp.mean() <= band.t_low;

    ControllerState next = st;
    next.last_decision_time = time;
    if (too_hot) {
        next.heater_on = false;
    } else if (too_cold) {
        next.heater_on = true;
    }
    return next;
}

ControllerState enter_safe_mode(const ControllerState& st) {
    ControllerState next = st;
    next.safe_mode = true;
    next.heater_on = false;
    return next;
}

ConfidenceSides parse_confidence_sides(std::string_view text) {
    if (text == "both") return ConfidenceSides::Both;
    if (text == "off_only") return ConfidenceSides::OffOnly;
    if (text == "on_only") return ConfidenceSides::OnOnly;
    throw std::invalid_argument(fmt::format("unknown confidence sides '{}' (both|off_only|on_only)", text));
}

std::string_view to_string(ConfidenceSides sides) {
    switch (sides) {
        case ConfidenceSides::Both: return "both";
        case ConfidenceSides::OffOnly: return "off_only";
        case ConfidenceSides::OnOnly: return "on_only";
    }
    return "both";
}

}  // namespace dtsim
