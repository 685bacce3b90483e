#include "dtsim/sensing.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace dtsim {

double SensorModel::std() const {
    return accuracy / std::sqrt(3.0);
}

void SensorModel::validate() const {
    if (!(accuracy >= 0.0)) {
        throw std::invalid_argument(fmt::format("sensor accuracy must be >= 0, got {}", accuracy));
    }
    if (!(period > 0.0)) {
        throw std::invalid_argument(fmt::format("sensor period must be > 0, got {}", period));
    }
}

SensorReading sample(double truth_temp, double timestamp, const SensorModel& model,
                     const std::string& sensor_id, RngStream& stream) {
    const double ticks = timestamp / model.period;
    if (std::abs(ticks - std::round(ticks)) > 1e-6) {
        throw std::invalid_argument(
            fmt::format("sensor {} read at t={} off its {} s grid", sensor_id, timestamp, model.period));
    }
    // Draw even when accuracy is zero so the stream position tracks the tick count.
    const double u = stream.uniform(-1.0, 1.0);
    return {truth_temp + model.accuracy * u, timestamp, sensor_id};
}

UncertainReal to_uncertain(const SensorReading& r, const SensorModel& model) {
    return {r.raw, model.std()};
}

UncertainReal average(std::span<const UncertainReal> readings) {
    if (readings.empty()) {
        throw std::invalid_argument("cannot average an empty set of readings");
    }
    double sum = 0.0;
    double var = 0.0;
    for (const auto& r : readings) {
        sum += r.mean();
        var += r.variance();
    }
    const double n = static_cast<double>(readings.size());
    return {sum / n, std::sqrt(var) / n};
}

Sensor::Sensor(std::string id, SensorModel model, std::uint64_t run_seed)
    : id_(std::move(id)), model_(model), stream_(run_seed, "sensor/" + id_) {
    model_.validate();
}

SensorReading Sensor::read(double truth_temp, double timestamp) {
    return sample(truth_temp, timestamp, model_, id_, stream_);
}

}  // namespace dtsim
