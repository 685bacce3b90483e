#include "dtsim/calibration.hpp"

#include "dtsim/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dtsim {

double twin_std_at_end(const ScenarioConfig& cfg) {
    ScenarioConfig c = cfg;
    c.approach = Approach::UADT;
    c.failure.enabled = false;
    const auto r = run_scenario(c, 0, RunOptions{false});
    return *r.final_dt_std;
}

KNumFit fit_k_num(const ScenarioConfig& cfg, double target, double rel_tol) {
    if (!(target > 0.0) || !(rel_tol > 0.0)) {
        throw std::invalid_argument("target and tolerance must be positive");
    }
    KNumFit fit;
    ScenarioConfig c = cfg;
    const auto eval = [&](double k) {
        c.solver.k_num = k;
        ++fit.evaluations;
        return twin_std_at_end(c);
    };

    fit.sigma_without = eval(0.0);
    if (fit.sigma_without > target * (1.0 + rel_tol)) {
        throw std::invalid_argument(fmt::format(
            "twin std already reaches {:.4g} without numerical error, above the target {:.4g}; "
            "reduce the parameter uncertainties",
            fit.sigma_without, target));
    }

    double lo = 0.0;
    double hi = 1.0;
    double s_hi = eval(hi);
    while (s_hi < target) {
        lo = hi;
        hi *= 2.0;
        s_hi = eval(hi);
        if (hi > 1e12) {
            throw std::runtime_error("k_num search did not bracket the target");
        }
    }
    fit.k_num = hi;
    fit.sigma = s_hi;
    for (int i = 0; i < 100 && std::abs(fit.sigma - target) > rel_tol * target; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double s = eval(mid);
        fit.k_num = mid;
        fit.sigma = s;
        if (s < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    fit.converged = std::abs(fit.sigma - target) <= rel_tol * target;
    return fit;
}

OscillationReport measure_oscillation(const ScenarioConfig& cfg) {
    ScenarioConfig c = cfg;
    c.approach = Approach::GT;
    c.sample_true_params = false;
    c.failure.enabled = false;
    const auto run = run_scenario(c, 0, RunOptions{true});

    OscillationReport r;
    std::vector<double> offs;
    for (const auto& row : run.trace) {
        if (row.event == Event::SwitchOff) {
            offs.push_back(row.time);
        }
    }
    if (offs.empty()) {
        return r;
    }
    r.first_off = offs.front();
    r.cycles = static_cast<int>(offs.size()) - 1;
    if (r.cycles > 0) {
        r.period = (offs.back() - offs.front()) / r.cycles;
    }
    r.t_min = r.t_max = c.band.t_high;
    for (const auto& row : run.trace) {
        if (row.time >= *r.first_off) {
            r.t_min = std::min(r.t_min, row.t_true);
            r.t_max = std::max(r.t_max, row.t_true);
        }
    }
    return r;
}

bool oscillation_ok(const OscillationReport& r, const ControlBand& band, double slack, double min_period,
                    double max_period) {
    return r.first_off && r.cycles >= 2 && r.t_min >= band.t_low - slack && r.t_max <= band.t_high + slack &&
           r.period >= min_period && r.period <= max_period;
}

}  // namespace dtsim
