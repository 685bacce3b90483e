#pragma once

#include "dtsim/scenario.hpp"

#include <optional>

namespace dtsim {

/// Twin box std at the end of a single UADT run (run 0 of cfg.seed).
double twin_std_at_end(const ScenarioConfig& cfg);

struct KNumFit {
    double k_num = 0.0;
    double sigma = 0.0;        // twin box std at the end of the run
    double sigma_without = 0.0; // same with k_num = 0 (parameter and input share)
    int evaluations = 0;
    bool converged = false;
};

/// Bisection on solver.k_num until the twin's box std at the end of the
/// run is within `rel_tol` of `target`. Throws when the target is below
/// what parameter and input uncertainty alone already produce.
KNumFit fit_k_num(const ScenarioConfig& cfg, double target = 2.52, double rel_tol = 0.01);

/// Closed-loop behaviour of the measurand under the classical controller
/// with nominal parameters, measured after the first switch-off.
struct OscillationReport {
    std::optional<double> first_off;
    double period = 0.0; // mean interval between successive switch-offs
    int cycles = 0;
    double t_min = 0.0;
    double t_max = 0.0;
};

OscillationReport measure_oscillation(const ScenarioConfig& cfg);

/// Band-keeping criterion for the plant nominals: at least two full
/// cycles, the temperature stays within `slack` of the band, and the
/// period lies in [min_period, max_period].
bool oscillation_ok(const OscillationReport& r, const ControlBand& band, double slack = 0.5,
                    double min_period = 100.0, double max_period = 1000.0);

}  // namespace dtsim
