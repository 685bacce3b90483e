#pragma once

#include "dtsim/rng.hpp"
#include "dtsim/uncertain.hpp"

#include <span>
#include <string>

namespace dtsim {

/// A temperature sensor whose datasheet accuracy is read as a uniform
/// error of half-width `accuracy`.
struct SensorModel {
    double accuracy = 0.5; // degC
    double period = 2.0;   // s

    /// Standard uncertainty of a uniform error: accuracy / sqrt(3).
    [[nodiscard]] double std() const;
    void validate() const;
};

struct SensorReading {
    double raw = 0.0;       // degC
    double timestamp = 0.0; // s
    std::string sensor_id;
};

/// One noisy reading of `truth_temp`. Throws if `timestamp` is off the
/// sensor's sampling grid.
SensorReading sample(double truth_temp, double timestamp, const SensorModel& model,
                     const std::string& sensor_id, RngStream& stream);

UncertainReal to_uncertain(const SensorReading& r, const SensorModel& model);

/// Mean of independent readings: std = sqrt(sum sigma_i^2) / n.
UncertainReal average(std::span<const UncertainReal> readings);

/// A sensor bound to its own named random substream.
class Sensor {
public:
    Sensor(std::string id, SensorModel model, std::uint64_t run_seed);

    SensorReading read(double truth_temp, double timestamp);
    [[nodiscard]] const SensorModel& model() const { return model_; }
    [[nodiscard]] const std::string& id() const { return id_; }

private:
    std::string id_;
    SensorModel model_;
    RngStream stream_;
};

}  // namespace dtsim
