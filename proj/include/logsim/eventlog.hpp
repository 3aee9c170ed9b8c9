#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "logsim/time.hpp"

namespace logsim {

enum class Lifecycle { start, complete };

struct Event {
    std::string case_id;
    std::string activity;
    Timestamp timestamp;
    Lifecycle lifecycle = Lifecycle::complete;

    bool operator==(const Event&) const = default;
};

// One process instance. Events are kept sorted by timestamp; equal
// timestamps keep their construction order.
class Trace {
public:
    Trace(std::string case_id, std::vector<Event> events);

    const std::string& case_id() const noexcept { return case_id_; }
    const std::vector<Event>& events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }

    // Activity names of the complete events, in order.
    std::vector<std::string> activities() const;
    std::size_t complete_count() const;

    bool operator==(const Trace&) const = default;

private:
    std::string case_id_;
    std::vector<Event> events_;
};

class EventLog {
public:
    EventLog() = default;
    // Throws SchemaError on duplicate case ids.
    explicit EventLog(std::vector<Trace> traces);

    const std::vector<Trace>& traces() const noexcept { return traces_; }
    std::size_t size() const noexcept { return traces_.size(); }
    bool empty() const noexcept { return traces_.empty(); }
    std::size_t event_count() const;
    const std::set<std::string>& activity_alphabet() const noexcept { return alphabet_; }

    bool operator==(const EventLog&) const = default;

private:
    std::vector<Trace> traces_;
    std::set<std::string> alphabet_;
};

struct CsvMapping {
    std::string case_column = "case_id";
    std::string activity_column = "activity";
    std::string timestamp_column = "timestamp";
    // Column holding "start"/"complete". Without it every row is a complete event.
    std::optional<std::string> lifecycle_column;
    // Column holding the start instant of the row's (complete) event, as
    // produced by write_csv(..., include_start = true). Empty cells are allowed.
    std::optional<std::string> start_column;
    std::string timestamp_format{kDefaultTimestampFormat};
};

// Traces appear in order of first occurrence of their case id.
EventLog parse_csv(std::istream& in, const CsvMapping& mapping = {});
EventLog parse_csv(std::string_view text, const CsvMapping& mapping = {});

// Header `case_id,activity,timestamp[,start_timestamp]`, one row per complete
// event, rows ordered by timestamp, then case id, then position in the trace.
// A complete event's start is its FIFO-matched start event of the same case
// and activity; unmatched start events are not written.
// Column names of the first record, empty for empty input.
std::vector<std::string> csv_header(std::string_view text);

void write_csv(std::ostream& out, const EventLog& log, bool include_start = false);
std::string write_csv(const EventLog& log, bool include_start = false);

using VariantCounts = std::map<std::vector<std::string>, std::size_t>;

VariantCounts trace_variants(const EventLog& log);

// Orders case ids numerically when both are digit strings, lexicographically
// otherwise.
bool case_id_less(std::string_view a, std::string_view b);

}  // namespace logsim
