#pragma once

#include "dtsim/scenario.hpp"
#include "dtsim/trace.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace dtsim {

/// Statistics of |error| for one approach.
struct ErrorStats {
    Approach approach = Approach::GT;
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    double std = 0.0; // sample standard deviation (n - 1); 0 for a single value
    double q05 = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double q95 = 0.0;
    double max = 0.0;
};

/// median(a) / median(b); NaN when median(b) is 0.
struct MedianRatio {
    Approach a = Approach::MDTS;
    Approach b = Approach::UAPT;
    double ratio = 0.0;
};

struct Summary {
    std::vector<ErrorStats> approaches; // in Approach order
    std::vector<MedianRatio> comparisons;
};

/// Linear interpolation between order statistics (the usual "type 7"
/// definition). `sorted` must be ascending and non-empty.
double quantile(std::span<const double> sorted, double p);

/// Throws std::invalid_argument on empty input.
Summary summarize(std::span<const SwitchError> errors);

void write_summary(std::ostream& os, const Summary& s);

struct UncertaintyStats {
    Approach approach = Approach::GT;
    UKind kind = UKind::U;
    std::size_t count = 0;
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
};

std::vector<UncertaintyStats> summarize_uncertainties(std::span<const UncertaintySample> samples);

void write_uncertainty_summary(std::ostream& os, const std::vector<UncertaintyStats>& stats);

}  // namespace dtsim
