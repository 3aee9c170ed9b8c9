#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "logsim/time.hpp"

namespace logsim {

// A weekly opening window [begin, end) on one weekday, offsets in seconds
// from midnight. end may be 86400.
struct BusinessWindow {
    std::chrono::weekday day;
    std::int64_t begin = 0;
    std::int64_t end = 0;

    bool operator==(const BusinessWindow&) const = default;
};

// Either always open (24/7) or open only during recurring weekly windows.
// Process time accrues only while the calendar is open.
class BusinessCalendar {
public:
    // Always-on.
    BusinessCalendar() = default;

    // Throws ConfigError on an empty list, begin >= end, end > 24h or
    // overlapping windows on the same weekday.
    static BusinessCalendar weekly(std::vector<BusinessWindow> windows);

    // "24/7", or one or more "<days> <ranges>" groups separated by ';', e.g.
    // "Mon-Fri 09:00-12:00,13:00-17:00; Sat 10:00-14:00".
    static BusinessCalendar parse(std::string_view spec);

    bool always_on() const noexcept { return windows_.empty(); }
    // Sorted by position within the week (Monday first).
    const std::vector<BusinessWindow>& windows() const noexcept { return windows_; }
    std::int64_t open_seconds_per_week() const noexcept { return week_total_; }

    // True if t falls in some window, with windows half-open.
    bool is_open(Timestamp t) const;

    // Open seconds between a fixed Monday before the epoch and t.
    std::int64_t open_seconds_until(Timestamp t) const;

    // Earliest instant u that is open (or any u when always-on) with
    // open_seconds_until(u) - open_seconds_until(from) == seconds.
    // seconds must be non-negative.
    Timestamp advance(Timestamp from, std::int64_t seconds) const;

    // Canonical form accepted by parse().
    std::string to_string() const;

    bool operator==(const BusinessCalendar&) const = default;

private:
    std::vector<BusinessWindow> windows_;
    std::int64_t week_total_ = 0;
};

// Seconds of [t0, t1] that fall inside the calendar's windows. Throws
// PreconditionError if t0 > t1.
std::int64_t business_seconds_between(const BusinessCalendar& cal, Timestamp t0, Timestamp t1);

}  // namespace logsim
