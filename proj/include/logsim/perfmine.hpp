#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logsim/calendar.hpp"
#include "logsim/discovery.hpp"
#include "logsim/distribution.hpp"
#include "logsim/eventlog.hpp"

namespace logsim {

// Mined simulation parameters. Durations are in seconds; inter-arrival
// times are in open (business) seconds.
struct PerfProfile {
    Distribution inter_arrival;
    std::map<std::string, Distribution> activity_durations;
    std::map<std::string, double> transition_weights;
    std::size_t max_len = 1;
    BusinessCalendar calendar;
    // First arrival of the source log; the default real-time origin of a run.
    std::optional<Timestamp> origin;

    bool operator==(const PerfProfile&) const = default;
};

// Tukey fences at 1.5 IQR, quartiles by linear interpolation on the sorted
// sample. Keeps input order; never returns an empty list.
std::vector<double> remove_outliers(std::span<const double> samples);

// Quantile of a sorted sample, linear interpolation between order statistics.
double interpolated_quantile(std::span<const double> sorted, double q);

// Kolmogorov-Smirnov statistic of a sample against a distribution.
double ks_statistic(std::span<const double> samples, const Distribution& dist);

// Constant samples give fixed(v). Otherwise exponential, normal, lognormal and
// uniform are fitted by moments (all preserve the sample mean) and the one
// with the smallest KS statistic wins, ties going to the earlier kind. Normal
// and uniform fits with more than 1% of their mass below zero are skipped.
Distribution fit_distribution(std::span<const double> samples);

// Arrival of a case is its first event. Gaps between consecutive arrivals are
// measured in calendar-open seconds. Throws InsufficientDataError for fewer
// than two traces.
Distribution mine_inter_arrival(const EventLog& log, const BusinessCalendar& cal);

// Durations from start/complete pairs matched FIFO per case and activity,
// outliers removed, then fitted. Activities never started get fixed(0).
std::map<std::string, Distribution> mine_activity_durations(const EventLog& log);

// Occurrence count of each activity: incoming directly-follows edges plus
// start count.
std::map<std::string, double> mine_transition_weights(const Dfg& dfg);

// Everything above in one pass. When the log has fewer than two traces,
// `arrival_fallback` is used as the inter-arrival distribution if given.
PerfProfile mine_profile(const EventLog& log, const BusinessCalendar& cal,
                         std::optional<Distribution> arrival_fallback = std::nullopt);

// Line-oriented "key = value" text:
//   arrival = <distribution>
//   calendar = <business hours>
//   max_len = <n>
//   origin = YYYY-MM-DD HH:MM:SS        (optional)
//   duration <activity> = <distribution>
//   weight <activity> = <number>
// '#' starts a comment line. Doubles are written in shortest round-trip form.
std::string format_profile(const PerfProfile& profile);
// Throws ConfigError naming the offending line.
PerfProfile parse_profile(std::string_view text);

}  // namespace logsim
