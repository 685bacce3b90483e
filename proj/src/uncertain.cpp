#include "dtsim/uncertain.hpp"

#include <fmt/format.h>

#include <ostream>
#include <stdexcept>

namespace dtsim {

UncertainReal::UncertainReal(double mean, double std) : mean_(mean), std_(std) {
    if (!(std >= 0.0)) {
        throw std::invalid_argument(fmt::format("standard uncertainty must be >= 0, got {}", std));
    }
}

UncertainBool::UncertainBool(double confidence) : confidence_(confidence) {
    if (!(confidence >= 0.0 && confidence <= 1.0)) {
        throw std::invalid_argument(fmt::format("confidence must lie in [0,1], got {}", confidence));
    }
}

UncertainReal add(const UncertainReal& a, const UncertainReal& b) {
    return {a.mean() + b.mean(), std::hypot(a.std(), b.std())};
}

UncertainReal sub(const UncertainReal& a, const UncertainReal& b) {
    return {a.mean() - b.mean(), std::hypot(a.std(), b.std())};
}

UncertainReal scale(double k, const UncertainReal& a) {
    return {k * a.mean(), std::abs(k) * a.std()};
}

UncertainReal mul(const UncertainReal& a, const UncertainReal& b) {
    return {a.mean() * b.mean(), std::hypot(b.mean() * a.std(), a.mean() * b.std())};
}

UncertainReal div(const UncertainReal& a, const UncertainReal& b) {
    if (b.mean() == 0.0) {
        throw std::domain_error("division by an uncertain value with zero mean");
    }
    // Same first-order rule as |a/b| * hypot(sa/a, sb/b), written so that a.mean() == 0 is allowed.
    const double q = a.mean() / b.mean();
    return {q, std::hypot(a.std() / b.mean(), q * b.std() / b.mean())};
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

UncertainBool lt_prob(const UncertainReal& a, const UncertainReal& b) {
    const double spread = std::hypot(a.std(), b.std());
    if (spread == 0.0) {
        return UncertainBool(a.mean() < b.mean() ? 1.0 : 0.0);
    }
    return UncertainBool(normal_cdf((b.mean() - a.mean()) / spread));
}

bool decide(const UncertainBool& p, double confidence_level) {
    if (!(confidence_level > 0.0 && confidence_level < 1.0)) {
        throw std::invalid_argument(fmt::format("confidence level must lie in (0,1), got {}", confidence_level));
    }
    return p.confidence() >= confidence_level;
}

bool eq_in_distribution(const UncertainReal& a, const UncertainReal& b, double tol) {
    if (!(tol >= 0.0)) {
        throw std::invalid_argument("tolerance must be >= 0");
    }
    return std::abs(a.mean() - b.mean()) <= tol && std::abs(a.std() - b.std()) <= tol;
}

std::ostream& operator<<(std::ostream& os, const UncertainReal& v) {
    return os << v.mean() << "+-" << v.std();
}

}  // namespace dtsim
