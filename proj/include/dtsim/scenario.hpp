#pragma once

#include "dtsim/consistency.hpp"
#include "dtsim/control.hpp"
#include "dtsim/mitigation.hpp"
#include "dtsim/plant.hpp"
#include "dtsim/sensing.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dtsim {

/// GT: controller sees the true temperature. PT: averaged raw sensor means.
/// UAPT: averaged sensor values with their uncertainty. UADT: the twin's
/// box temperature. MDTS: fused PT/DT value with consistency gating.
enum class Approach { GT, PT, UAPT, UADT, MDTS };

std::string_view to_string(Approach a);
Approach parse_approach(std::string_view text);
/// Comma-separated list, e.g. "UAPT,UADT,MDTS".
std::vector<Approach> parse_approaches(std::string_view text);

/// Where the twin's room temperature comes from.
enum class RoomSource {
    Config,   // plant.t_room with plant.t_room_std
    Init,     // one room-sensor reading at t = 0
    PerSample // refreshed at every sensor period
};

std::string_view to_string(RoomSource s);
RoomSource parse_room_source(std::string_view text);

/// Lid opening: the box loses heat g_box_factor times faster from `time` on.
struct FailureSpec {
    bool enabled = false;
    double time = 600.0;       // s
    double g_box_factor = 5.0; // > 1
};

struct ScenarioConfig {
    Approach approach = Approach::MDTS;
    double duration = 2500.0;     // s
    double control_period = 3.0;  // s
    double sensor_period = 2.0;   // s
    std::uint64_t seed = 1;
    int runs = 1;

    SolverConfig solver;
    PlantParams plant;
    /// Draw the measurand's physical parameters once per run from the
    /// twin's N(nominal, std), so the twin carries genuine model error.
    bool sample_true_params = true;
    /// Temperature of box and heater at t = 0.
    double initial_temp = 21.0;

    double sensor_accuracy = 0.5; // degC half-width
    int box_sensors = 2;
    RoomSource room_source = RoomSource::Init;

    ControlBand band;
    FusionConfig fusion;
    ConsistencyConfig consistency;
    FailureSpec failure;

    [[nodiscard]] SensorModel sensor_model() const { return {sensor_accuracy, sensor_period}; }
    [[nodiscard]] long long steps() const;
    [[nodiscard]] long long steps_per(double period) const;

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;
};

/// Flat `key = value` text, `#` starts a comment. Keys mirror the field
/// names (solver.h, plant.g_box_std, band.t_low, ...). Unknown keys and
/// malformed values are errors; missing keys keep their defaults.
ScenarioConfig parse_scenario(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Apply one `key = value` override.
void set_scenario_key(ScenarioConfig& cfg, std::string_view key, std::string_view value);

/// Every key, in a fixed order, with round-trip precision.
std::string to_text(const ScenarioConfig& cfg);

std::vector<std::string> scenario_keys();

}  // namespace dtsim
