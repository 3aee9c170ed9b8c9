#include "logsim/transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "logsim/error.hpp"

namespace logsim {

Timestamp to_timestamp(const BusinessCalendar& cal, Timestamp anchor, double clock) {
    if (!(clock >= 0) || !std::isfinite(clock)) {
        throw PreconditionError("simulation clock must be finite and non-negative");
    }
    return cal.advance(anchor, std::llround(clock));
}

EventLog to_event_log(std::span<const SimEventRecord> records, Timestamp anchor, const BusinessCalendar& cal) {
    if (!cal.is_open(anchor)) {
        throw ConfigError("anchor " + format_timestamp(anchor) + " lies outside the business hours '" +
                          cal.to_string() + "'");
    }
    std::map<std::string, std::vector<Event>, bool (*)(std::string_view, std::string_view)> by_case(
        [](std::string_view a, std::string_view b) { return case_id_less(a, b); });
    for (const auto& r : records) {
        auto& events = by_case[r.case_id];
        events.push_back(Event{r.case_id, r.activity, to_timestamp(cal, anchor, r.start_clock), Lifecycle::start});
        events.push_back(Event{r.case_id, r.activity, to_timestamp(cal, anchor, r.complete_clock)});
    }
    std::vector<Trace> traces;
    traces.reserve(by_case.size());
    for (auto& [id, events] : by_case) {
        traces.emplace_back(id, std::move(events));
    }
    return EventLog(std::move(traces));
}

}  // namespace logsim
