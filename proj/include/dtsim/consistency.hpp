#pragma once

#include "dtsim/uncertain.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace dtsim {

struct ConsistencyConfig {
    double k = 2.0;              // coverage factor
    double c = 0.95;             // per-point degree required for trace consistency
    double r = 0.05;             // degree at or below which two values are inconsistent
    std::size_t window = 3;      // consecutive inconsistent cycles that confirm a divergence
    double coverage_ratio = 1.0; // fraction of points that must reach c

    void validate() const;
};

struct ConsistencyReport {
    double time = 0.0;
    double degree = 1.0;
    bool consistent = true;
    bool diverged = false;
};

struct TimedValue {
    double time = 0.0;
    UncertainReal value;
};

/// Intersection over union of the two +-k sigma intervals, except that
/// containment counts as full agreement (1) and disjoint intervals as 0.
double degree(const UncertainReal& v_p, const UncertainReal& v_d, double k);

/// degree > cfg.r (strict, so r = 0 only rejects disjoint intervals).
bool consistent_values(const UncertainReal& v_p, const UncertainReal& v_d, const ConsistencyConfig& cfg);

struct TraceConsistency {
    bool consistent = false;
    double ratio = 0.0;
};

/// Fraction of grid points whose degree reaches cfg.c. Throws when the two
/// traces are not sampled on the same time grid.
TraceConsistency trace_consistent(std::span<const TimedValue> x, std::span<const TimedValue> y,
                                  const ConsistencyConfig& cfg);

struct DivergenceEvent {
    double time = 0.0;       // when the window filled
    double onset_time = 0.0; // first inconsistent sample of the run
};

/// Streaming detector: a divergence is declared at the `window`-th
/// consecutive report whose degree is at or below r. Fires once.
class DivergenceDetector {
public:
    explicit DivergenceDetector(const ConsistencyConfig& cfg);

    /// Reports must arrive in time order.
    std::optional<DivergenceEvent> push(const ConsistencyReport& report);

    [[nodiscard]] bool diverged() const { return fired_; }
    [[nodiscard]] std::size_t run_length() const { return run_; }

private:
    double r_;
    std::size_t window_;
    std::size_t run_ = 0;
    double onset_ = 0.0;
    double last_time_ = 0.0;
    bool started_ = false;
    bool fired_ = false;
};

std::optional<DivergenceEvent> detect_divergence(std::span<const ConsistencyReport> reports,
                                                 const ConsistencyConfig& cfg);

}  // namespace dtsim
