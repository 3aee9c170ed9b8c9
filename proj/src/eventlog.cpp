#include "logsim/eventlog.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "csv.hpp"
#include "logsim/error.hpp"

namespace logsim {

Trace::Trace(std::string case_id, std::vector<Event> events)
    : case_id_(std::move(case_id)), events_(std::move(events)) {
    for (const auto& e : events_) {
        if (e.case_id != case_id_) {
            throw PreconditionError("event of case '" + e.case_id + "' placed in trace '" +
                                    case_id_ + "'");
        }
        if (e.activity.empty()) {
            throw PreconditionError("empty activity name in case '" + case_id_ + "'");
        }
    }
    std::stable_sort(events_.begin(), events_.end(),
                     [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
}

std::vector<std::string> Trace::activities() const {
    std::vector<std::string> out;
    out.reserve(events_.size());
    for (const auto& e : events_) {
        if (e.lifecycle == Lifecycle::complete) {
            out.push_back(e.activity);
        }
    }
    return out;
}

std::size_t Trace::complete_count() const {
    return static_cast<std::size_t>(std::count_if(events_.begin(), events_.end(), [](const Event& e) {
        return e.lifecycle == Lifecycle::complete;
    }));
}

EventLog::EventLog(std::vector<Trace> traces) : traces_(std::move(traces)) {
    std::set<std::string_view> seen;
    for (const auto& t : traces_) {
        if (!seen.insert(t.case_id()).second) {
            throw SchemaError("duplicate case id '" + t.case_id() + "'");
        }
        for (const auto& e : t.events()) {
            alphabet_.insert(e.activity);
        }
    }
}

std::size_t EventLog::event_count() const {
    std::size_t n = 0;
    for (const auto& t : traces_) {
        n += t.size();
    }
    return n;
}

namespace {

std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw SchemaError("missing column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

Lifecycle parse_lifecycle(std::string value, std::size_t line) {
    std::transform(value.begin(), value.end(), value.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (value == "complete") {
        return Lifecycle::complete;
    }
    if (value == "start") {
        return Lifecycle::start;
    }
    throw RowError(line, "unsupported lifecycle value '" + value + "'");
}

bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view strip_leading_zeros(std::string_view s) {
    while (s.size() > 1 && s.front() == '0') {
        s.remove_prefix(1);
    }
    return s;
}

}  // namespace

bool case_id_less(std::string_view a, std::string_view b) {
    const bool da = is_digits(a);
    const bool db = is_digits(b);
    if (da != db) {
        return da;
    }
    if (da) {
        const auto sa = strip_leading_zeros(a);
        const auto sb = strip_leading_zeros(b);
        if (sa.size() != sb.size()) {
            return sa.size() < sb.size();
        }
        if (sa != sb) {
            return sa < sb;
        }
    }
    return a < b;
}

EventLog parse_csv(std::istream& in, const CsvMapping& mapping) {
    detail::CsvReader reader(in);
    std::vector<std::string> header;
    if (!reader.next(header) || (header.size() == 1 && header[0].empty())) {
        throw EmptyLogError("empty input: no header row");
    }
    const std::size_t case_col = find_column(header, mapping.case_column);
    const std::size_t act_col = find_column(header, mapping.activity_column);
    const std::size_t ts_col = find_column(header, mapping.timestamp_column);
    std::optional<std::size_t> life_col;
    std::optional<std::size_t> start_col;
    if (mapping.lifecycle_column) {
        life_col = find_column(header, *mapping.lifecycle_column);
    }
    if (mapping.start_column) {
        start_col = find_column(header, *mapping.start_column);
    }

    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<Event>> by_case;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const std::size_t line = reader.record_line();
        if (row.size() == 1 && row[0].empty()) {
            continue;
        }
        if (row.size() != header.size()) {
            throw RowError(line, "expected " + std::to_string(header.size()) + " fields, found " +
                                     std::to_string(row.size()));
        }
        const std::string& activity = row[act_col];
        if (activity.empty()) {
            throw RowError(line, "empty activity");
        }
        const auto ts = parse_timestamp(row[ts_col], mapping.timestamp_format);
        if (!ts) {
            throw RowError(line, "unparseable timestamp '" + row[ts_col] + "'");
        }
        const Lifecycle life = life_col ? parse_lifecycle(row[*life_col], line) : Lifecycle::complete;

        auto [it, inserted] = by_case.try_emplace(row[case_col]);
        if (inserted) {
            order.push_back(row[case_col]);
        }
        if (start_col && !row[*start_col].empty()) {
            const auto start = parse_timestamp(row[*start_col], mapping.timestamp_format);
            if (!start) {
                throw RowError(line, "unparseable start timestamp '" + row[*start_col] + "'");
            }
            if (*start > *ts) {
                throw RowError(line, "start timestamp after timestamp");
            }
            it->second.push_back(Event{row[case_col], activity, *start, Lifecycle::start});
        }
        it->second.push_back(Event{row[case_col], activity, *ts, life});
    }

    std::vector<Trace> traces;
    traces.reserve(order.size());
    for (auto& id : order) {
        traces.emplace_back(id, std::move(by_case[id]));
    }
    return EventLog(std::move(traces));
}

EventLog parse_csv(std::string_view text, const CsvMapping& mapping) {
    std::istringstream in{std::string(text)};
    return parse_csv(in, mapping);
}

std::vector<std::string> csv_header(std::string_view text) {
    std::istringstream in{std::string(text)};
    detail::CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) {
        fields.clear();
    }
    return fields;
}

void write_csv(std::ostream& out, const EventLog& log, bool include_start) {
    struct Row {
        const Event* complete;
        std::optional<Timestamp> start;
        std::size_t position;
    };
    std::vector<Row> rows;
    for (const auto& trace : log.traces()) {
        std::map<std::string_view, std::deque<Timestamp>> open;
        std::size_t position = 0;
        for (const auto& e : trace.events()) {
            if (e.lifecycle == Lifecycle::start) {
                open[e.activity].push_back(e.timestamp);
                continue;
            }
            Row row{&e, std::nullopt, position++};
            auto it = open.find(e.activity);
            if (it != open.end() && !it->second.empty()) {
                row.start = it->second.front();
                it->second.pop_front();
            }
            rows.push_back(row);
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.complete->timestamp != b.complete->timestamp) {
            return a.complete->timestamp < b.complete->timestamp;
        }
        if (a.complete->case_id != b.complete->case_id) {
            return case_id_less(a.complete->case_id, b.complete->case_id);
        }
        return a.position < b.position;
    });

    std::string buf = include_start ? "case_id,activity,timestamp,start_timestamp\n"
                                    : "case_id,activity,timestamp\n";
    for (const auto& row : rows) {
        detail::write_csv_field(buf, row.complete->case_id);
        buf.push_back(',');
        detail::write_csv_field(buf, row.complete->activity);
        buf.push_back(',');
        buf += format_timestamp(row.complete->timestamp);
        if (include_start) {
            buf.push_back(',');
            if (row.start) {
                buf += format_timestamp(*row.start);
            }
        }
        buf.push_back('\n');
    }
    out << buf;
}

std::string write_csv(const EventLog& log, bool include_start) {
    std::ostringstream out;
    write_csv(out, log, include_start);
    return out.str();
}

VariantCounts trace_variants(const EventLog& log) {
    VariantCounts counts;
    for (const auto& t : log.traces()) {
        ++counts[t.activities()];
    }
    return counts;
}

}  // namespace logsim
