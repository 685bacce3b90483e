#pragma once

#include "dtsim/uncertain.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtsim {

/// Index of each uncertain plant parameter inside the twin's covariance.
enum class Param : std::size_t { CAir, GBox, CHeater, GHeater, VHeater, IHeater, TRoom };
inline constexpr std::size_t kParamCount = 7;

/// Two-state incubator model: box air and heater element, coupled by
/// Newton cooling, losing heat to a constant-temperature room.
struct PlantParams {
    UncertainReal c_air{30.0};     // J/degC
    UncertainReal g_box{0.06};     // W/degC, box <-> room
    UncertainReal c_heater{120.0}; // J/degC
    UncertainReal g_heater{3.0};   // W/degC, heater <-> air
    UncertainReal v_heater{12.0};  // V
    UncertainReal i_heater{0.5};   // A
    UncertainReal t_room{21.0};    // degC, constant over a run

    [[nodiscard]] const UncertainReal& operator[](Param p) const;
    UncertainReal& operator[](Param p);

    /// Same nominal values with every standard uncertainty dropped.
    [[nodiscard]] PlantParams nominal() const;

    /// Throws std::invalid_argument on non-positive nominals.
    void validate() const;
};

/// Thermal state. `t_box`/`t_heater` carry marginal standard uncertainties;
/// the remaining fields are the first-order cross covariances the twin
/// needs for a consistent linearized update. All zero for the measurand.
struct PlantState {
    double time = 0.0;
    UncertainReal t_box;
    UncertainReal t_heater;
    double cov_box_heater = 0.0;
    std::array<double, kParamCount> cov_box_param{};
    std::array<double, kParamCount> cov_heater_param{};

    [[nodiscard]] bool is_deterministic() const;
    static PlantState at_rest(double temperature, double uncertainty = 0.0, double time = 0.0);
};

struct SolverConfig {
    double h = 0.1;            // s
    double k_num = 0.0;        // per-step numerical std is k_num * h^2
    double sigma_init = 0.005; // degC
    void validate() const;
};

struct Derivatives {
    double d_box = 0.0;    // degC/s
    double d_heater = 0.0; // degC/s
};

/// Thrown when a step produces a non-finite value.
class SimulationFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Derivatives derivatives(const PlantState& state, bool heater_on, const PlantParams& params);

/// Measurand step: classical RK4 on nominal parameter values.
PlantState step_gt(const PlantState& state, bool heater_on, const PlantParams& params, double h);

/// Twin step: forward Euler on the means, linearized covariance update
/// over (t_box, t_heater, parameters) plus (k_num h^2)^2 per state per step.
PlantState step_dt(const PlantState& state, bool heater_on, const PlantParams& params,
                   const SolverConfig& solver);

/// Replace the box temperature with a value at least as certain. The box
/// cross covariances are scaled with the standard deviation so the joint
/// covariance stays positive semi-definite.
PlantState reset_state(const PlantState& state, const UncertainReal& new_t_box);

/// Largest step for which forward Euler is stable on the linear dynamics.
double euler_stability_bound(const PlantParams& params);
/// Same for classical RK4 (real negative spectrum, |h lambda| <= 2.785).
double rk4_stability_bound(const PlantParams& params);

/// Box temperature reached with the heater permanently on.
double heater_on_fixed_point(const PlantParams& params);

}  // namespace dtsim
