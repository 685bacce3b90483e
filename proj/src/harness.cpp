#include "dtsim/harness.hpp"

#include "dtsim/consistency.hpp"
#include "dtsim/control.hpp"
#include "dtsim/mitigation.hpp"
#include "dtsim/rng.hpp"
#include "dtsim/sensing.hpp"

#include <fmt/format.h>

#include <cmath>
#include <string>

namespace dtsim {

namespace {

enum class Pending { None, Reset, SafeMode };

bool uses_twin(Approach a) { return a == Approach::UADT || a == Approach::MDTS; }

bool uses_box_sensors(Approach a) { return a == Approach::PT || a == Approach::UAPT || a == Approach::MDTS; }

}  // namespace

PlantParams draw_true_params(const ScenarioConfig& cfg, int run_id) {
    PlantParams p = cfg.plant.nominal();
    if (!cfg.sample_true_params) {
        return p;
    }
    RngStream stream(run_seed(cfg, run_id), "plant/params");
    for (auto which : {Param::CAir, Param::GBox, Param::CHeater, Param::GHeater, Param::VHeater, Param::IHeater}) {
        const auto& u = cfg.plant[which];
        double v = u.mean() + u.std() * stream.normal();
        while (!(v > 0.0)) {
            v = u.mean() + u.std() * stream.normal();
        }
        p[which] = UncertainReal(v);
    }
    return p;
}

RunResult run_scenario(const ScenarioConfig& cfg, int run_id, const RunOptions& options) {
    cfg.validate();

    RunResult result;
    result.run_id = run_id;
    result.approach = cfg.approach;
    result.true_params = draw_true_params(cfg, run_id);

    const Approach approach = cfg.approach;
    const std::uint64_t seed = run_seed(cfg, run_id);
    const double h = cfg.solver.h;
    const long long total = cfg.steps();
    const long long per_control = cfg.steps_per(cfg.control_period);
    const long long per_sensor = cfg.steps_per(cfg.sensor_period);
    const SensorModel sensor_model = cfg.sensor_model();

    PlantParams failed_params = result.true_params;
    failed_params.g_box = UncertainReal(result.true_params.g_box.mean() * cfg.failure.g_box_factor);

    std::vector<Sensor> box_sensors;
    for (int i = 0; i < cfg.box_sensors; ++i) {
        box_sensors.emplace_back(fmt::format("box{}", i + 1), sensor_model, seed);
    }
    Sensor room_sensor("room", sensor_model, seed);
    const double true_room = result.true_params.t_room.mean();

    const bool twin = uses_twin(approach);
    const bool box_sensing = uses_box_sensors(approach);
    const bool room_sensing = twin && cfg.room_source != RoomSource::Config;

    PlantState gt = PlantState::at_rest(cfg.initial_temp);
    PlantParams dt_params = cfg.plant;
    PlantState dt = PlantState::at_rest(cfg.initial_temp, cfg.solver.sigma_init);

    ControllerState ctrl;
    DivergenceDetector detector(cfg.consistency);
    std::vector<UncertainReal> readings(box_sensors.size());
    UncertainReal estimate;
    std::optional<double> perceived_mean;
    std::optional<double> perceived_std;
    Pending pending = Pending::None;
    UncertainReal pending_tp;
    double last_dt_std = dt.t_box.std();

    if (options.keep_trace) {
        result.trace.reserve(static_cast<std::size_t>(total + 1));
    }

    for (long long n = 0; n <= total; ++n) {
        const double t = static_cast<double>(n) * h;
        TraceRow row;
        row.time = t;

        if (pending == Pending::SafeMode) {
            ctrl = enter_safe_mode(ctrl);
            row.event = Event::SafeMode;
            result.safe_mode_at = t;
        } else if (pending == Pending::Reset) {
            // The twin has moved one step since the decision; fuse the held
            // sensor estimate with its current value.
            const UncertainReal fused = fuse(pending_tp, dt.t_box);
            dt = reset_state(dt, fused);
            row.event = Event::Reset;
            row.u_mitigated = fused.std();
            ++result.resets;
            last_dt_std = dt.t_box.std();
        }
        pending = Pending::None;

        if (n % per_sensor == 0) {
            if (box_sensing) {
                for (std::size_t i = 0; i < box_sensors.size(); ++i) {
                    readings[i] = to_uncertain(box_sensors[i].read(gt.t_box.mean(), t), sensor_model);
                }
                estimate = average(readings);
            }
            if (room_sensing && (n == 0 || cfg.room_source == RoomSource::PerSample)) {
                dt_params.t_room = to_uncertain(room_sensor.read(true_room, t), sensor_model);
            }
        }

        if (n % per_control == 0) {
            const bool was_on = ctrl.heater_on;
            const auto log_u = [&](double value, UKind kind) {
                result.uncertainties.push_back({run_id, approach, t, value, kind});
            };
            switch (approach) {
                case Approach::GT:
                    perceived_mean = gt.t_box.mean();
                    perceived_std = 0.0;
                    ctrl = classical_decide(gt.t_box.mean(), ctrl, cfg.band, t);
                    break;
                case Approach::PT:
                    perceived_mean = estimate.mean();
                    perceived_std.reset();
                    ctrl = classical_decide(estimate.mean(), ctrl, cfg.band, t);
                    break;
                case Approach::UAPT:
                    perceived_mean = estimate.mean();
                    perceived_std = estimate.std();
                    log_u(estimate.std(), UKind::Uprime);
                    ctrl = ua_decide(estimate, ctrl, cfg.band, t);
                    break;
                case Approach::UADT:
                    perceived_mean = dt.t_box.mean();
                    perceived_std = dt.t_box.std();
                    log_u(dt.t_box.std(), UKind::U);
                    ctrl = ua_decide(dt.t_box, ctrl, cfg.band, t);
                    break;
                case Approach::MDTS: {
                    perceived_mean = estimate.mean();
                    perceived_std = estimate.std();
                    if (detector.diverged()) {
                        // The twin is out of service; the latched controller ignores the input.
                        break;
                    }
                    log_u(dt.t_box.std(), UKind::U);
                    log_u(estimate.std(), UKind::Uprime);
                    const double d = degree(estimate, dt.t_box, cfg.consistency.k);
                    const bool ok = d > cfg.consistency.r;
                    if (detector.push({t, d, ok, false})) {
                        row.event = Event::Diverged;
                        result.diverged_at = t;
                        pending = Pending::SafeMode;
                        break;
                    }
                    if (ok) {
                        const UncertainReal fused = fuse(estimate, dt.t_box);
                        row.u_mitigated = fused.std();
                        log_u(fused.std(), UKind::Mu);
                        perceived_mean = fused.mean();
                        perceived_std = fused.std();
                        ctrl = ua_decide(fused, ctrl, cfg.band, t);
                        if (dt.t_box.std() >= cfg.fusion.reset_threshold()) {
                            pending = Pending::Reset;
                            pending_tp = estimate;
                        }
                    } else {
                        // Averaging inconsistent values would mask the change; act on the sensors alone.
                        ctrl = ua_decide(estimate, ctrl, cfg.band, t);
                    }
                    break;
                }
            }
            // The decision at t = 0 sets the initial actuator state; it is not a switch.
            if (n > 0 && ctrl.heater_on != was_on) {
                row.event = ctrl.heater_on ? Event::SwitchOn : Event::SwitchOff;
                const double actual = gt.t_box.mean();
                result.switches.push_back(
                    {run_id, approach, t, *perceived_mean, actual, *perceived_mean - actual});
            }
        }

        row.t_true = gt.t_box.mean();
        row.perceived_mean = perceived_mean;
        row.perceived_std = perceived_std;
        if (approach == Approach::UAPT || approach == Approach::MDTS) {
            row.u_pt = estimate.std();
        }
        if (twin) {
            row.u_dt = dt.t_box.std();
        }
        row.heater_on = ctrl.heater_on;
        if (options.keep_trace) {
            result.trace.push_back(row);
        }

        if (n == total) {
            break;
        }
        const bool failed = cfg.failure.enabled && t >= cfg.failure.time;
        gt = step_gt(gt, ctrl.heater_on, failed ? failed_params : result.true_params, h);
        if (twin) {
            dt = step_dt(dt, ctrl.heater_on, dt_params, cfg.solver);
            if (dt.t_box.std() < last_dt_std) {
                result.dt_std_monotone = false;
            }
            last_dt_std = dt.t_box.std();
        }
    }

    result.final_t_true = gt.t_box.mean();
    if (twin) {
        result.final_dt_std = dt.t_box.std();
    }
    return result;
}

}  // namespace dtsim
