#pragma once

#include <span>

#include "logsim/calendar.hpp"
#include "logsim/engine.hpp"
#include "logsim/eventlog.hpp"

namespace logsim {

// Real instant of a simulation clock value: `anchor` advanced by the clock,
// rounded to whole seconds, counting only calendar-open time.
Timestamp to_timestamp(const BusinessCalendar& cal, Timestamp anchor, double clock);

// One start and one complete event per record; traces ordered by case id.
// Throws ConfigError when the calendar has windows and the anchor is not
// inside one.
EventLog to_event_log(std::span<const SimEventRecord> records, Timestamp anchor, const BusinessCalendar& cal);

}  // namespace logsim
