#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logsim/calendar.hpp"
#include "logsim/engine.hpp"
#include "logsim/eventlog.hpp"
#include "logsim/perfmine.hpp"
#include "logsim/petrinet.hpp"

namespace logsim {

struct DiscoveredModel {
    PetriNet net;
    PerfProfile profile;
};

// Alpha net plus mined profile. `arrival_mean` (seconds) replaces the mined
// inter-arrival process only when the log has fewer than two cases.
DiscoveredModel discover_model(const EventLog& log, const BusinessCalendar& cal,
                               std::optional<double> arrival_mean = std::nullopt);

// User-facing run options, in the textual form the command line accepts.
struct RunOptions {
    std::size_t cases = 0;
    std::uint64_t seed = 0;
    // Mean inter-arrival seconds; normal with sd = mean / 10.
    std::optional<double> arrival_mean;
    // "SECONDS" rescales the activity's distribution to that mean,
    // "kind:p1[:p2]" replaces it.
    std::vector<std::pair<std::string, std::string>> durations;
    // "K" or "inf"; activity "*" sets the default capacity.
    std::vector<std::pair<std::string, std::string>> capacities;
    // "YYYY-MM-DD HH:MM:SS"; defaults to the first calendar opening at or
    // after the profile origin.
    std::optional<std::string> anchor;
    // Overrides the profile calendar.
    std::optional<std::string> business_hours;
    std::optional<std::size_t> max_len;
    std::size_t retries = 25;
};

struct PreparedRun {
    SimConfig config;
    BusinessCalendar calendar;
};

// Throws OptionError for malformed option values and ConfigError when no
// anchor can be determined.
PreparedRun prepare_run(const PerfProfile& profile, const RunOptions& options);

// Splits "ACTIVITY=VALUE" at the last '='. Throws OptionError.
std::pair<std::string, std::string> split_assignment(const std::string& text);

struct SimulatedLog {
    EventLog log;
    SimulationResult run;
};

// Runs the engine and maps its clocks onto `cal` starting at config.anchor.
SimulatedLog simulate_log(const PetriNet& net, const PerfProfile& profile, const SimConfig& config,
                          const BusinessCalendar& cal);

struct ActivityStats {
    std::size_t count = 0;
    double mean_wait = 0.0;
    double mean_service = 0.0;
};

struct RunStats {
    std::size_t cases = 0;
    double mean_inter_arrival = 0.0;
    std::map<std::string, ActivityStats> activities;
    std::size_t retries = 0;
};

RunStats summarize(const SimulationResult& run);

}  // namespace logsim
