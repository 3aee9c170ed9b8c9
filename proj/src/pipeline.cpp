#include "logsim/pipeline.hpp"

#include <charconv>

#include "logsim/discovery.hpp"
#include "logsim/error.hpp"
#include "logsim/transform.hpp"

namespace logsim {

DiscoveredModel discover_model(const EventLog& log, const BusinessCalendar& cal, std::optional<double> arrival_mean) {
    PetriNet net = discover_alpha(log);
    std::optional<Distribution> fallback;
    if (arrival_mean) {
        fallback = arrival_for_mean(*arrival_mean);
    }
    return DiscoveredModel{std::move(net), mine_profile(log, cal, fallback)};
}

namespace {

std::optional<double> parse_number(const std::string& text) {
    double v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return v;
}

Distribution duration_override(const std::string& activity, const std::string& value, const PerfProfile& profile) {
    if (auto mean = parse_number(value)) {
        if (!(*mean >= 0)) {
            throw OptionError("duration for '" + activity + "' must be non-negative");
        }
        auto it = profile.activity_durations.find(activity);
        return it == profile.activity_durations.end() ? Distribution::fixed(*mean) : it->second.with_mean(*mean);
    }
    try {
        return Distribution::parse(value);
    } catch (const DomainError& e) {
        throw OptionError("duration for '" + activity + "': " + e.what());
    }
}

std::uint32_t parse_capacity(const std::string& value) {
    if (value == "inf" || value == "unlimited") {
        return kUnlimitedCapacity;
    }
    std::uint32_t k = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), k);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || k < 1) {
        throw OptionError("capacity must be a positive integer or 'inf', got '" + value + "'");
    }
    return k;
}

}  // namespace

std::pair<std::string, std::string> split_assignment(const std::string& text) {
    const auto eq = text.rfind('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
        throw OptionError("expected ACTIVITY=VALUE, got '" + text + "'");
    }
    return {text.substr(0, eq), text.substr(eq + 1)};
}

PreparedRun prepare_run(const PerfProfile& profile, const RunOptions& options) {
    PreparedRun run;
    run.calendar = profile.calendar;
    if (options.business_hours) {
        try {
            run.calendar = BusinessCalendar::parse(*options.business_hours);
        } catch (const ConfigError& e) {
            throw OptionError(e.what());
        }
    }
    SimConfig& config = run.config;
    config.num_cases = options.cases;
    config.seed = options.seed;
    config.max_case_retries = options.retries;
    config.max_len_override = options.max_len;
    if (options.max_len && *options.max_len < 1) {
        throw OptionError("maximum trace length must be at least 1");
    }
    if (options.arrival_mean) {
        if (!(*options.arrival_mean > 0)) {
            throw OptionError("arrival mean must be positive");
        }
        config.arrival_override = arrival_for_mean(*options.arrival_mean);
    }
    for (const auto& [activity, value] : options.durations) {
        config.duration_overrides.insert_or_assign(activity, duration_override(activity, value, profile));
    }
    for (const auto& [activity, value] : options.capacities) {
        if (activity == "*") {
            config.default_capacity = parse_capacity(value);
        } else {
            config.capacities.insert_or_assign(activity, parse_capacity(value));
        }
    }
    if (options.anchor) {
        const auto anchor = parse_timestamp(*options.anchor);
        if (!anchor) {
            throw OptionError("anchor must be \"YYYY-MM-DD HH:MM:SS\", got '" + *options.anchor + "'");
        }
        config.anchor = *anchor;
    } else if (profile.origin) {
        config.anchor = run.calendar.advance(*profile.origin, 0);
    } else {
        throw ConfigError("no anchor given and the profile has no origin");
    }
    return run;
}

SimulatedLog simulate_log(const PetriNet& net, const PerfProfile& profile, const SimConfig& config,
                          const BusinessCalendar& cal) {
    SimulationResult run = simulate(net, profile, config);
    EventLog log = to_event_log(run.records, config.anchor, cal);
    return SimulatedLog{std::move(log), std::move(run)};
}

RunStats summarize(const SimulationResult& run) {
    RunStats stats;
    stats.cases = run.arrival_clocks.size();
    if (run.arrival_clocks.size() > 1) {
        stats.mean_inter_arrival = (run.arrival_clocks.back() - run.arrival_clocks.front()) /
                                   static_cast<double>(run.arrival_clocks.size() - 1);
    }
    for (const auto& r : run.records) {
        auto& a = stats.activities[r.activity];
        ++a.count;
        a.mean_wait += r.wait;
        a.mean_service += r.complete_clock - r.start_clock;
    }
    for (auto& [name, a] : stats.activities) {
        a.mean_wait /= static_cast<double>(a.count);
        a.mean_service /= static_cast<double>(a.count);
    }
    stats.retries = run.retries;
    return stats;
}

}  // namespace logsim
