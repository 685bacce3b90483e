#include "dtsim/mitigation.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace dtsim {

void FusionConfig::validate() const {
    if (!(reliability_limit > 0.0)) {
        throw std::invalid_argument(fmt::format("fusion.reliability_limit must be > 0, got {}", reliability_limit));
    }
    if (!(reset_margin > 0.0 && reset_margin <= 1.0)) {
        throw std::invalid_argument(fmt::format("fusion.reset_margin must lie in (0,1], got {}", reset_margin));
    }
}

UncertainReal fuse(const UncertainReal& t_p, const UncertainReal& t_d) {
    const double vp = t_p.variance();
    const double vd = t_d.variance();
    if (vp == 0.0 && vd == 0.0) {
        if (t_p.mean() != t_d.mean()) {
            throw std::invalid_argument(
                fmt::format("cannot fuse contradicting crisp values {} and {}", t_p.mean(), t_d.mean()));
        }
        return t_p;
    }
    if (vp == 0.0) {
        return t_p;
    }
    if (vd == 0.0) {
        return t_d;
    }
    const double total = vp + vd;
    const double mean = (vd * t_p.mean() + vp * t_d.mean()) / total;
    return {mean, std::sqrt(vp * vd / total)};
}

bool is_reliable(const UncertainReal& t_d, const FusionConfig& cfg) {
    return t_d.std() < cfg.reliability_limit;
}

MitigationResult mitigate_step(const UncertainReal& t_p, const UncertainReal& t_d, const PlantState& dt_state,
                               const FusionConfig& cfg) {
    const UncertainReal fused = fuse(t_p, t_d);
    const bool reset = t_d.std() >= cfg.reset_threshold();
    FusionRecord record{t_p, t_d, fused, reset, dt_state.time};
    return {fused, reset ? reset_state(dt_state, fused) : dt_state, record};
}

}  // namespace dtsim
