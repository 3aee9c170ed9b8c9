#include "logsim/perfmine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "logsim/error.hpp"

namespace logsim {

double interpolated_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) {
        throw PreconditionError("quantile of an empty sample");
    }
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> remove_outliers(std::span<const double> samples) {
    if (samples.empty()) {
        throw PreconditionError("remove_outliers needs at least one sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double q1 = interpolated_quantile(sorted, 0.25);
    const double q3 = interpolated_quantile(sorted, 0.75);
    const double iqr = q3 - q1;
    const double low = q1 - 1.5 * iqr;
    const double high = q3 + 1.5 * iqr;
    std::vector<double> kept;
    for (double x : samples) {
        if (x >= low && x <= high) {
            kept.push_back(x);
        }
    }
    if (kept.empty()) {
        return {samples.begin(), samples.end()};
    }
    return kept;
}

double ks_statistic(std::span<const double> samples, const Distribution& dist) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) {
            ++j;
        }
        // The empirical CDF steps from i/n to j/n here; compare each side with
        // the matching one-sided limit of F (only fixed has a jump).
        const double f = dist.cdf(sorted[i]);
        const double f_left = dist.kind() == DistributionKind::fixed ? (sorted[i] > dist.param(0) ? 1.0 : 0.0) : f;
        d = std::max({d, std::abs(f_left - static_cast<double>(i) / n), std::abs(f - static_cast<double>(j) / n)});
        i = j;
    }
    return d;
}

namespace {
constexpr double kMaxNegativeMass = 0.01;
}  // namespace

Distribution fit_distribution(std::span<const double> samples) {
    if (samples.empty()) {
        throw PreconditionError("fit_distribution needs at least one sample");
    }
    for (double x : samples) {
        if (!std::isfinite(x) || x < 0) {
            throw DomainError("durations must be finite and non-negative");
        }
    }
    if (std::all_of(samples.begin(), samples.end(), [&](double x) { return x == samples[0]; })) {
        return Distribution::fixed(samples[0]);
    }
    const auto n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : samples) {
        ss += (x - mean) * (x - mean);
    }
    const double var = ss / n;
    const double sd = std::sqrt(var);

    std::vector<Distribution> candidates;
    if (mean > 0) {
        candidates.push_back(Distribution::exponential(1.0 / mean));
    }
    candidates.push_back(Distribution::normal(mean, sd));
    if (mean > 0) {
        const double s2 = std::log1p(var / (mean * mean));
        candidates.push_back(Distribution::lognormal(std::log(mean) - s2 / 2.0, std::sqrt(s2)));
    }
    const double half_width = std::sqrt(3.0) * sd;
    candidates.push_back(Distribution::uniform(mean - half_width, mean + half_width));

    // Draws are truncated at zero, so a fit with real mass below zero would
    // shift the simulated mean. Exponential and lognormal always qualify.
    const Distribution* best = nullptr;
    double best_d = 0.0;
    for (const auto& c : candidates) {
        if (c.cdf(0.0) > kMaxNegativeMass) {
            continue;
        }
        const double d = ks_statistic(samples, c);
        if (!best || d < best_d) {
            best = &c;
            best_d = d;
        }
    }
    return *best;
}

Distribution mine_inter_arrival(const EventLog& log, const BusinessCalendar& cal) {
    if (log.size() < 2) {
        throw InsufficientDataError("at least two cases are needed to mine inter-arrival times, found " +
                                    std::to_string(log.size()));
    }
    std::vector<Timestamp> arrivals;
    for (const auto& t : log.traces()) {
        if (t.events().empty()) {
            throw PreconditionError("case '" + t.case_id() + "' has no events");
        }
        arrivals.push_back(t.events().front().timestamp);
    }
    std::sort(arrivals.begin(), arrivals.end());
    std::vector<double> gaps;
    gaps.reserve(arrivals.size() - 1);
    for (std::size_t i = 1; i < arrivals.size(); ++i) {
        gaps.push_back(static_cast<double>(business_seconds_between(cal, arrivals[i - 1], arrivals[i])));
    }
    return fit_distribution(gaps);
}

std::map<std::string, Distribution> mine_activity_durations(const EventLog& log) {
    std::map<std::string, std::vector<double>> samples;
    for (const auto& activity : log.activity_alphabet()) {
        samples[activity];
    }
    for (const auto& trace : log.traces()) {
        std::map<std::string_view, std::deque<Timestamp>> open;
        for (const auto& e : trace.events()) {
            if (e.lifecycle == Lifecycle::start) {
                open[e.activity].push_back(e.timestamp);
                continue;
            }
            auto it = open.find(e.activity);
            if (it == open.end() || it->second.empty()) {
                continue;
            }
            const auto start = it->second.front();
            it->second.pop_front();
            if (e.timestamp < start) {
                throw RowError("negative duration for activity '" + e.activity + "' in case '" +
                                      trace.case_id() + "'");
            }
            samples[e.activity].push_back(static_cast<double>((e.timestamp - start).count()));
        }
    }
    std::map<std::string, Distribution> out;
    for (const auto& [activity, xs] : samples) {
        out.emplace(activity, xs.empty() ? Distribution::fixed(0) : fit_distribution(remove_outliers(xs)));
    }
    return out;
}

std::map<std::string, double> mine_transition_weights(const Dfg& dfg) {
    std::map<std::string, double> weights;
    for (const auto& [a, n] : dfg.starts) {
        weights[a] += static_cast<double>(n);
    }
    for (const auto& [edge, n] : dfg.edges) {
        weights[edge.second] += static_cast<double>(n);
    }
    return weights;
}

PerfProfile mine_profile(const EventLog& log, const BusinessCalendar& cal,
                         std::optional<Distribution> arrival_fallback) {
    PerfProfile profile;
    const Dfg dfg = build_dfg(log);
    if (log.size() < 2 && arrival_fallback) {
        profile.inter_arrival = *arrival_fallback;
    } else {
        profile.inter_arrival = mine_inter_arrival(log, cal);
    }
    profile.activity_durations = mine_activity_durations(log);
    profile.transition_weights = mine_transition_weights(dfg);
    profile.max_len = max_trace_length(log);
    profile.calendar = cal;
    for (const auto& t : log.traces()) {
        const auto first = t.events().front().timestamp;
        if (!profile.origin || first < *profile.origin) {
            profile.origin = first;
        }
    }
    return profile;
}

namespace {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_profile(const PerfProfile& profile) {
    std::string out = "# logsim performance profile\n";
    out += "arrival = " + profile.inter_arrival.to_string() + "\n";
    out += "calendar = " + profile.calendar.to_string() + "\n";
    out += "max_len = " + std::to_string(profile.max_len) + "\n";
    if (profile.origin) {
        out += "origin = " + format_timestamp(*profile.origin) + "\n";
    }
    for (const auto& [activity, dist] : profile.activity_durations) {
        out += "duration " + activity + " = " + dist.to_string() + "\n";
    }
    for (const auto& [activity, w] : profile.transition_weights) {
        out += "weight " + activity + " = " + format_number(w) + "\n";
    }
    return out;
}

PerfProfile parse_profile(std::string_view text) {
    PerfProfile profile;
    bool have_arrival = false;
    bool have_max_len = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const auto raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto fail = [&](const std::string& what) {
            throw ConfigError("profile line " + std::to_string(line_no) + ": " + what);
        };
        const auto eq = line.rfind('=');
        if (eq == std::string_view::npos) {
            fail("expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto space = key.find_first_of(" \t");
        const auto section = key.substr(0, space);
        const auto name = space == std::string_view::npos ? std::string_view{} : trim(key.substr(space));
        try {
            if (section == "arrival" && name.empty()) {
                profile.inter_arrival = Distribution::parse(value);
                have_arrival = true;
            } else if (section == "calendar" && name.empty()) {
                profile.calendar = BusinessCalendar::parse(value);
            } else if (section == "max_len" && name.empty()) {
                std::size_t n = 0;
                const auto res = std::from_chars(value.data(), value.data() + value.size(), n);
                if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || n < 1) {
                    fail("max_len must be a positive integer");
                }
                profile.max_len = n;
                have_max_len = true;
            } else if (section == "origin" && name.empty()) {
                const auto t = parse_timestamp(value);
                if (!t) {
                    fail("bad origin timestamp");
                }
                profile.origin = *t;
            } else if (section == "duration" && !name.empty()) {
                profile.activity_durations.insert_or_assign(std::string(name), Distribution::parse(value));
            } else if (section == "weight" && !name.empty()) {
                double w = 0;
                const auto res = std::from_chars(value.data(), value.data() + value.size(), w);
                if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || !(w > 0) ||
                    !std::isfinite(w)) {
                    fail("weight must be a positive number");
                }
                profile.transition_weights.insert_or_assign(std::string(name), w);
            } else {
                fail("unknown key '" + std::string(key) + "'");
            }
        } catch (const DomainError& e) {
            fail(e.what());
        }
    }
    if (!have_arrival) {
        throw ConfigError("profile has no 'arrival' entry");
    }
    if (!have_max_len) {
        throw ConfigError("profile has no 'max_len' entry");
    }
    return profile;
}

}  // namespace logsim
