#include "dtsim/summary.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace dtsim {

double quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(fmt::format("quantile level must lie in [0,1], got {}", p));
    }
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::span<const SwitchError> errors) {
    if (errors.empty()) {
        throw std::invalid_argument("no switch errors to summarize");
    }
    std::map<Approach, std::vector<double>> groups;
    for (const auto& e : errors) {
        groups[e.approach].push_back(std::abs(e.error));
    }

    Summary out;
    for (auto& [approach, v] : groups) {
        std::sort(v.begin(), v.end());
        ErrorStats s;
        s.approach = approach;
        s.count = v.size();
        s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        if (v.size() > 1) {
            double ss = 0.0;
            for (double x : v) {
                ss += (x - s.mean) * (x - s.mean);
            }
            s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
        s.median = quantile(v, 0.5);
        s.q05 = quantile(v, 0.05);
        s.q25 = quantile(v, 0.25);
        s.q75 = quantile(v, 0.75);
        s.q95 = quantile(v, 0.95);
        s.max = v.back();
        out.approaches.push_back(s);
    }

    const auto find = [&](Approach a) -> const ErrorStats* {
        for (const auto& s : out.approaches) {
            if (s.approach == a) {
                return &s;
            }
        }
        return nullptr;
    };
    if (const auto* m = find(Approach::MDTS)) {
        for (auto other : {Approach::UAPT, Approach::UADT}) {
            if (const auto* o = find(other)) {
                const double ratio =
                    o->median == 0.0 ? std::numeric_limits<double>::quiet_NaN() : m->median / o->median;
                out.comparisons.push_back({Approach::MDTS, other, ratio});
            }
        }
    }
    return out;
}

void write_summary(std::ostream& os, const Summary& s) {
    os << "approach,count,mean,median,std,q05,q25,q75,q95,max\n";
    for (const auto& a : s.approaches) {
        os << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", to_string(a.approach), a.count, format_real(a.mean),
                          format_real(a.median), format_real(a.std), format_real(a.q05), format_real(a.q25),
                          format_real(a.q75), format_real(a.q95), format_real(a.max));
    }
    if (!s.comparisons.empty()) {
        os << "\ncomparison,median_ratio\n";
        for (const auto& c : s.comparisons) {
            os << fmt::format("{}/{},{}\n", to_string(c.a), to_string(c.b), format_real(c.ratio));
        }
    }
}

std::vector<UncertaintyStats> summarize_uncertainties(std::span<const UncertaintySample> samples) {
    std::map<std::pair<Approach, UKind>, std::vector<double>> groups;
    for (const auto& s : samples) {
        groups[{s.approach, s.kind}].push_back(s.value);
    }
    std::vector<UncertaintyStats> out;
    for (auto& [key, v] : groups) {
        std::sort(v.begin(), v.end());
        out.push_back({key.first, key.second, v.size(), v.front(), quantile(v, 0.5), v.back()});
    }
    return out;
}

void write_uncertainty_summary(std::ostream& os, const std::vector<UncertaintyStats>& stats) {
    os << "approach,u_kind,count,min,median,max\n";
    for (const auto& s : stats) {
        os << fmt::format("{},{},{},{},{},{}\n", to_string(s.approach), to_string(s.kind), s.count,
                          format_real(s.min), format_real(s.median), format_real(s.max));
    }
}

}  // namespace dtsim
