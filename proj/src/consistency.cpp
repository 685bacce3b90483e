#include "dtsim/consistency.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dtsim {

void ConsistencyConfig::validate() const {
    if (!(k > 0.0)) {
        throw std::invalid_argument(fmt::format("consistency.k must be > 0, got {}", k));
    }
    if (!(c > 0.0 && c < 1.0)) {
        throw std::invalid_argument(fmt::format("consistency.c must lie in (0,1), got {}", c));
    }
    if (!(r >= 0.0 && r < 1.0)) {
        throw std::invalid_argument(fmt::format("consistency.r must lie in [0,1), got {}", r));
    }
    if (window < 1) {
        throw std::invalid_argument("consistency.window must be >= 1");
    }
    if (!(coverage_ratio > 0.0 && coverage_ratio <= 1.0)) {
        throw std::invalid_argument(
            fmt::format("consistency.coverage_ratio must lie in (0,1], got {}", coverage_ratio));
    }
}

double degree(const UncertainReal& v_p, const UncertainReal& v_d, double k) {
    if (!(k > 0.0)) {
        throw std::invalid_argument("coverage factor must be > 0");
    }
    const double lo_p = v_p.mean() - k * v_p.std();
    const double hi_p = v_p.mean() + k * v_p.std();
    const double lo_d = v_d.mean() - k * v_d.std();
    const double hi_d = v_d.mean() + k * v_d.std();

    const bool p_in_d = lo_d <= lo_p && hi_p <= hi_d;
    const bool d_in_p = lo_p <= lo_d && hi_d <= hi_p;
    if (p_in_d || d_in_p) {
        return 1.0;
    }
    const double inter = std::min(hi_p, hi_d) - std::max(lo_p, lo_d);
    if (inter <= 0.0) {
        return 0.0;
    }
    const double uni = std::max(hi_p, hi_d) - std::min(lo_p, lo_d);
    return inter / uni;
}

bool consistent_values(const UncertainReal& v_p, const UncertainReal& v_d, const ConsistencyConfig& cfg) {
    return degree(v_p, v_d, cfg.k) > cfg.r;
}

TraceConsistency trace_consistent(std::span<const TimedValue> x, std::span<const TimedValue> y,
                                  const ConsistencyConfig& cfg) {
    if (x.size() != y.size()) {
        throw std::invalid_argument(fmt::format("traces differ in length ({} vs {})", x.size(), y.size()));
    }
    if (x.empty()) {
        throw std::invalid_argument("cannot compare empty traces");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double scale = std::max({1.0, std::abs(x[i].time), std::abs(y[i].time)});
        if (std::abs(x[i].time - y[i].time) > 1e-9 * scale) {
            throw std::invalid_argument(
                fmt::format("trace grids differ at index {} ({} vs {})", i, x[i].time, y[i].time));
        }
        if (degree(x[i].value, y[i].value, cfg.k) >= cfg.c) {
            ++hits;
        }
    }
    const double ratio = static_cast<double>(hits) / static_cast<double>(x.size());
    return {ratio >= cfg.coverage_ratio, ratio};
}

DivergenceDetector::DivergenceDetector(const ConsistencyConfig& cfg) : r_(cfg.r), window_(cfg.window) {
    cfg.validate();
}

std::optional<DivergenceEvent> DivergenceDetector::push(const ConsistencyReport& report) {
    if (started_ && report.time < last_time_) {
        throw std::invalid_argument("consistency reports must arrive in time order");
    }
    started_ = true;
    last_time_ = report.time;
    if (fired_) {
        return std::nullopt;
    }
    if (report.degree > r_) {
        run_ = 0;
        return std::nullopt;
    }
    if (run_ == 0) {
        onset_ = report.time;
    }
    if (++run_ < window_) {
        return std::nullopt;
    }
    fired_ = true;
    return DivergenceEvent{report.time, onset_};
}

std::optional<DivergenceEvent> detect_divergence(std::span<const ConsistencyReport> reports,
                                                 const ConsistencyConfig& cfg) {
    DivergenceDetector detector(cfg);
    for (const auto& r : reports) {
        if (auto ev = detector.push(r)) {
            return ev;
        }
    }
    return std::nullopt;
}

}  // namespace dtsim
