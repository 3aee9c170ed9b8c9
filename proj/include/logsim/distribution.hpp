#pragma once

#include <array>
#include <string>
#include <string_view>

namespace logsim {

enum class DistributionKind { exponential, normal, lognormal, uniform, fixed };

std::string_view kind_name(DistributionKind kind);

// Parametric distribution of a non-negative duration in seconds.
//   exponential(rate)       mean 1/rate
//   normal(mean, sd)
//   lognormal(mu, sigma)    parameters of the underlying normal
//   uniform(low, high)
//   fixed(value)
class Distribution {
public:
    // fixed(0)
    Distribution() = default;

    // Each factory throws DomainError on out-of-domain parameters.
    static Distribution exponential(double rate);
    static Distribution normal(double mean, double sd);
    static Distribution lognormal(double mu, double sigma);
    static Distribution uniform(double low, double high);
    static Distribution fixed(double value);

    // "<kind> <p1> [<p2>]", e.g. "normal 600 60". ':' is accepted in place of
    // blanks ("normal:600:60").
    static Distribution parse(std::string_view text);

    DistributionKind kind() const noexcept { return kind_; }
    double param(std::size_t i) const { return params_.at(i); }

    // Mean of the untruncated distribution.
    double mean() const;
    double cdf(double x) const;

    // Same family, rescaled so that mean() == target. A zero-mean
    // distribution becomes fixed(target).
    Distribution with_mean(double target) const;

    // Shortest round-trip representation; parse(to_string()) == *this.
    std::string to_string() const;

    bool operator==(const Distribution&) const = default;

private:
    Distribution(DistributionKind kind, double p0, double p1) : kind_(kind), params_{p0, p1} {}

    DistributionKind kind_ = DistributionKind::fixed;
    std::array<double, 2> params_{0.0, 0.0};
};

}  // namespace logsim
