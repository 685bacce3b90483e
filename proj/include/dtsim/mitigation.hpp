#pragma once

#include "dtsim/plant.hpp"
#include "dtsim/uncertain.hpp"

namespace dtsim {

struct FusionConfig {
    double reliability_limit = 0.3; // degC std
    double reset_margin = 0.9;      // reset once twin std >= margin * limit

    [[nodiscard]] double reset_threshold() const { return reset_margin * reliability_limit; }
    void validate() const;
};

struct FusionRecord {
    UncertainReal t_p;
    UncertainReal t_d;
    UncertainReal t_fused;
    bool reset_triggered = false;
    double time = 0.0;
};

/// Inverse-variance weighted mean of two independent estimates. A crisp
/// operand wins outright; two contradicting crisp operands throw.
UncertainReal fuse(const UncertainReal& t_p, const UncertainReal& t_d);

/// The twin is trusted while its box std stays strictly below the limit.
bool is_reliable(const UncertainReal& t_d, const FusionConfig& cfg);

struct MitigationResult {
    UncertainReal fused;
    PlantState dt_state;
    FusionRecord record;
};

/// Fuse the two box temperatures and, when the twin is close to its
/// reliability limit, reset the twin's box temperature to the fused value.
/// The caller must have established that `t_p` and `t_d` are consistent.
MitigationResult mitigate_step(const UncertainReal& t_p, const UncertainReal& t_d, const PlantState& dt_state,
                               const FusionConfig& cfg);

}  // namespace dtsim
