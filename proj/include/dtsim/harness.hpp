#pragma once

#include "dtsim/plant.hpp"
#include "dtsim/scenario.hpp"
#include "dtsim/trace.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dtsim {

struct RunOptions {
    bool keep_trace = true;
};

struct RunResult {
    int run_id = 0;
    Approach approach = Approach::GT;
    std::vector<TraceRow> trace; // empty unless RunOptions::keep_trace
    std::vector<SwitchError> switches;
    std::vector<UncertaintySample> uncertainties;

    PlantParams true_params;     // what the measurand actually ran with
    double final_t_true = 0.0;
    std::optional<double> final_dt_std;
    std::optional<double> diverged_at;
    std::optional<double> safe_mode_at;
    int resets = 0;
    /// Twin box std never decreased except at resets.
    bool dt_std_monotone = true;
};

/// Run seed for a given run: seed + run_id.
inline std::uint64_t run_seed(const ScenarioConfig& cfg, int run_id) {
    return cfg.seed + static_cast<std::uint64_t>(run_id);
}

/// Measurand parameters for one run: the nominal values, or one draw from
/// N(nominal, std) per physical parameter when sample_true_params is set.
/// The room temperature is never perturbed.
PlantParams draw_true_params(const ScenarioConfig& cfg, int run_id);

/// One closed-loop run of `cfg.approach` against the measurand. Pure
/// function of (cfg, run_id): identical inputs give bit-identical output.
RunResult run_scenario(const ScenarioConfig& cfg, int run_id, const RunOptions& options = {});

}  // namespace dtsim
