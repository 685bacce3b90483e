#pragma once

#include <cmath>
#include <iosfwd>

namespace dtsim {

/// A real value with a standard uncertainty, read as a Normal random
/// variable N(mean, std^2). Operands are always treated as independent.
class UncertainReal {
public:
    constexpr UncertainReal() = default;
    UncertainReal(double mean, double std = 0.0);

    [[nodiscard]] double mean() const { return mean_; }
    [[nodiscard]] double std() const { return std_; }
    [[nodiscard]] double variance() const { return std_ * std_; }
    [[nodiscard]] bool is_crisp() const { return std_ == 0.0; }

    UncertainReal operator-() const { return {-mean_, std_}; }

private:
    double mean_ = 0.0;
    double std_ = 0.0;
};

/// Probability that a proposition over uncertain values holds.
class UncertainBool {
public:
    explicit UncertainBool(double confidence);

    [[nodiscard]] double confidence() const { return confidence_; }
    UncertainBool operator!() const { return UncertainBool(1.0 - confidence_); }

private:
    double confidence_;
};

UncertainReal add(const UncertainReal& a, const UncertainReal& b);
UncertainReal sub(const UncertainReal& a, const UncertainReal& b);
UncertainReal scale(double k, const UncertainReal& a);
UncertainReal mul(const UncertainReal& a, const UncertainReal& b);
// Throws std::domain_error when b.mean() == 0.
UncertainReal div(const UncertainReal& a, const UncertainReal& b);

inline UncertainReal operator+(const UncertainReal& a, const UncertainReal& b) { return add(a, b); }
inline UncertainReal operator-(const UncertainReal& a, const UncertainReal& b) { return sub(a, b); }
inline UncertainReal operator*(const UncertainReal& a, const UncertainReal& b) { return mul(a, b); }
inline UncertainReal operator*(double k, const UncertainReal& a) { return scale(k, a); }
inline UncertainReal operator*(const UncertainReal& a, double k) { return scale(k, a); }
inline UncertainReal operator/(const UncertainReal& a, const UncertainReal& b) { return div(a, b); }

/// Standard Normal CDF.
double normal_cdf(double x);

/// P(a < b). Two crisp operands compare strictly: equal means give 0.
UncertainBool lt_prob(const UncertainReal& a, const UncertainReal& b);
inline UncertainBool gt_prob(const UncertainReal& a, const UncertainReal& b) { return lt_prob(b, a); }

/// True iff p.confidence() >= confidence_level (inclusive boundary).
bool decide(const UncertainBool& p, double confidence_level);

bool eq_in_distribution(const UncertainReal& a, const UncertainReal& b, double tol);

std::ostream& operator<<(std::ostream& os, const UncertainReal& v);

}  // namespace dtsim
