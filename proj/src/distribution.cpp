#include "logsim/distribution.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "logsim/error.hpp"

namespace logsim {
namespace {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

std::string_view kind_name(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::exponential: return "exponential";
        case DistributionKind::normal: return "normal";
        case DistributionKind::lognormal: return "lognormal";
        case DistributionKind::uniform: return "uniform";
        case DistributionKind::fixed: return "fixed";
    }
    return "?";
}

Distribution Distribution::exponential(double rate) {
    if (!finite(rate) || rate <= 0) {
        throw DomainError("exponential rate must be positive, got " + format_double(rate));
    }
    return {DistributionKind::exponential, rate, 0.0};
}

Distribution Distribution::normal(double mean, double sd) {
    if (!finite(mean) || !finite(sd) || sd < 0) {
        throw DomainError("normal requires finite mean and sd >= 0");
    }
    return {DistributionKind::normal, mean, sd};
}

Distribution Distribution::lognormal(double mu, double sigma) {
    if (!finite(mu) || !finite(sigma) || sigma < 0) {
        throw DomainError("lognormal requires finite mu and sigma >= 0");
    }
    return {DistributionKind::lognormal, mu, sigma};
}

Distribution Distribution::uniform(double low, double high) {
    if (!finite(low) || !finite(high) || low > high) {
        throw DomainError("uniform requires finite low <= high");
    }
    return {DistributionKind::uniform, low, high};
}

Distribution Distribution::fixed(double value) {
    if (!finite(value) || value < 0) {
        throw DomainError("fixed value must be finite and non-negative, got " + format_double(value));
    }
    return {DistributionKind::fixed, value, 0.0};
}

Distribution Distribution::parse(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ':'; };
    while (i < text.size()) {
        while (i < text.size() && is_sep(text[i])) {
            ++i;
        }
        std::size_t j = i;
        while (j < text.size() && !is_sep(text[j])) {
            ++j;
        }
        if (j > i) {
            tokens.push_back(text.substr(i, j - i));
        }
        i = j;
    }
    if (tokens.empty()) {
        throw DomainError("empty distribution");
    }
    std::vector<double> params;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
        double v = 0;
        const auto res = std::from_chars(tokens[k].data(), tokens[k].data() + tokens[k].size(), v);
        if (res.ec != std::errc{} || res.ptr != tokens[k].data() + tokens[k].size()) {
            throw DomainError("bad number '" + std::string(tokens[k]) + "' in distribution '" +
                              std::string(text) + "'");
        }
        params.push_back(v);
    }
    const std::string_view kind = tokens[0];
    auto want = [&](std::size_t n) {
        if (params.size() != n) {
            throw DomainError("distribution '" + std::string(kind) + "' takes " + std::to_string(n) +
                              " parameter(s)");
        }
    };
    if (kind == "exponential" || kind == "exp") {
        want(1);
        return exponential(params[0]);
    }
    if (kind == "normal") {
        want(2);
        return normal(params[0], params[1]);
    }
    if (kind == "lognormal") {
        want(2);
        return lognormal(params[0], params[1]);
    }
    if (kind == "uniform") {
        want(2);
        return uniform(params[0], params[1]);
    }
    if (kind == "fixed") {
        want(1);
        return fixed(params[0]);
    }
    throw DomainError("unknown distribution kind '" + std::string(kind) + "'");
}

double Distribution::mean() const {
    const auto [a, b] = params_;
    switch (kind_) {
        case DistributionKind::exponential: return 1.0 / a;
        case DistributionKind::normal: return a;
        case DistributionKind::lognormal: return std::exp(a + b * b / 2.0);
        case DistributionKind::uniform: return (a + b) / 2.0;
        case DistributionKind::fixed: return a;
    }
    return 0.0;
}

double Distribution::cdf(double x) const {
    const auto [a, b] = params_;
    switch (kind_) {
        case DistributionKind::exponential:
            return x <= 0 ? 0.0 : -std::expm1(-a * x);
        case DistributionKind::normal:
            if (b == 0) {
                return x < a ? 0.0 : 1.0;
            }
            return 0.5 * std::erfc(-(x - a) / (b * std::sqrt(2.0)));
        case DistributionKind::lognormal:
            if (x <= 0) {
                return 0.0;
            }
            if (b == 0) {
                return std::log(x) < a ? 0.0 : 1.0;
            }
            return 0.5 * std::erfc(-(std::log(x) - a) / (b * std::sqrt(2.0)));
        case DistributionKind::uniform:
            if (x < a) {
                return 0.0;
            }
            if (x >= b) {
                return 1.0;
            }
            return (x - a) / (b - a);
        case DistributionKind::fixed:
            return x < a ? 0.0 : 1.0;
    }
    return 0.0;
}

Distribution Distribution::with_mean(double target) const {
    if (!finite(target) || target < 0) {
        throw DomainError("target mean must be finite and non-negative");
    }
    const double current = mean();
    if (current <= 0 || target == 0) {
        return fixed(target);
    }
    const double f = target / current;
    const auto [a, b] = params_;
    switch (kind_) {
        case DistributionKind::exponential: return exponential(a / f);
        case DistributionKind::normal: return normal(a * f, b * f);
        case DistributionKind::lognormal: return lognormal(a + std::log(f), b);
        case DistributionKind::uniform: return uniform(a * f, b * f);
        case DistributionKind::fixed: return fixed(target);
    }
    return fixed(target);
}

std::string Distribution::to_string() const {
    std::string out(kind_name(kind_));
    out += " " + format_double(params_[0]);
    if (kind_ != DistributionKind::exponential && kind_ != DistributionKind::fixed) {
        out += " " + format_double(params_[1]);
    }
    return out;
}

}  // namespace logsim
