#include "logsim/calendar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <map>

#include "logsim/error.hpp"

namespace logsim {
namespace {

constexpr std::int64_t kDay = 86'400;
constexpr std::int64_t kWeek = 7 * kDay;
// 1969-12-29 was a Monday.
constexpr std::int64_t kReferenceMonday = -3 * kDay;

constexpr std::array<std::string_view, 7> kDayNames = {"Mon", "Tue", "Wed", "Thu",
                                                        "Fri", "Sat", "Sun"};

std::int64_t day_index(std::chrono::weekday d) {
    return static_cast<std::int64_t>(d.iso_encoding()) - 1;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

int parse_day(std::string_view name, std::string_view spec) {
    for (std::size_t i = 0; i < kDayNames.size(); ++i) {
        if (name.size() >= 3 && std::equal(name.begin(), name.begin() + 3, kDayNames[i].begin(),
                                           [](char a, char b) {
                                               return std::tolower(static_cast<unsigned char>(a)) ==
                                                      std::tolower(static_cast<unsigned char>(b));
                                           })) {
            return static_cast<int>(i);
        }
    }
    throw ConfigError("unknown weekday '" + std::string(name) + "' in business hours '" +
                      std::string(spec) + "'");
}

std::int64_t parse_clock(std::string_view text, std::string_view spec) {
    int h = 0;
    int m = 0;
    char tail = 0;
    const std::string s(text);
    if (std::sscanf(s.c_str(), "%d:%d%c", &h, &m, &tail) != 2 || h < 0 || h > 24 || m < 0 ||
        m > 59 || (h == 24 && m != 0)) {
        throw ConfigError("bad time of day '" + s + "' in business hours '" + std::string(spec) +
                          "'");
    }
    return h * 3600LL + m * 60LL;
}

std::string format_clock(std::int64_t seconds) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%02lld:%02lld", static_cast<long long>(seconds / 3600),
                  static_cast<long long>(seconds % 3600 / 60));
    std::string out = buf;
    if (seconds % 60 != 0) {
        std::snprintf(buf, sizeof buf, ":%02lld", static_cast<long long>(seconds % 60));
        out += buf;
    }
    return out;
}

}  // namespace

BusinessCalendar BusinessCalendar::weekly(std::vector<BusinessWindow> windows) {
    if (windows.empty()) {
        throw ConfigError("a weekly business calendar needs at least one window");
    }
    for (const auto& w : windows) {
        if (!w.day.ok() || w.begin < 0 || w.begin >= w.end || w.end > kDay) {
            throw ConfigError("invalid business window " + format_clock(w.begin) + "-" +
                              format_clock(w.end));
        }
    }
    std::sort(windows.begin(), windows.end(), [](const BusinessWindow& a, const BusinessWindow& b) {
        return day_index(a.day) * kDay + a.begin < day_index(b.day) * kDay + b.begin;
    });
    BusinessCalendar cal;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (i > 0 && windows[i].day == windows[i - 1].day && windows[i].begin < windows[i - 1].end) {
            throw ConfigError("overlapping business windows on " +
                              std::string(kDayNames[static_cast<std::size_t>(day_index(windows[i].day))]));
        }
        cal.week_total_ += windows[i].end - windows[i].begin;
    }
    cal.windows_ = std::move(windows);
    return cal;
}

BusinessCalendar BusinessCalendar::parse(std::string_view spec) {
    const auto text = trim(spec);
    if (text == "24/7") {
        return BusinessCalendar{};
    }
    std::vector<BusinessWindow> windows;
    for (auto group : split(text, ';')) {
        if (group.empty()) {
            continue;
        }
        const auto space = group.find_first_of(" \t");
        if (space == std::string_view::npos) {
            throw ConfigError("business hours group '" + std::string(group) +
                              "' must be '<days> <hh:mm-hh:mm>'");
        }
        std::vector<int> days;
        for (auto part : split(group.substr(0, space), ',')) {
            const auto dash = part.find('-');
            if (dash == std::string_view::npos) {
                days.push_back(parse_day(part, spec));
                continue;
            }
            const int first = parse_day(trim(part.substr(0, dash)), spec);
            const int last = parse_day(trim(part.substr(dash + 1)), spec);
            for (int d = first;; d = (d + 1) % 7) {
                days.push_back(d);
                if (d == last) {
                    break;
                }
            }
        }
        for (auto range : split(trim(group.substr(space)), ',')) {
            const auto dash = range.find('-');
            if (dash == std::string_view::npos) {
                throw ConfigError("bad time range '" + std::string(range) + "'");
            }
            const auto begin = parse_clock(trim(range.substr(0, dash)), spec);
            const auto end = parse_clock(trim(range.substr(dash + 1)), spec);
            for (int d : days) {
                windows.push_back(
                    BusinessWindow{std::chrono::weekday{static_cast<unsigned>(d + 1) % 7}, begin, end});
            }
        }
    }
    return weekly(std::move(windows));
}

bool BusinessCalendar::is_open(Timestamp t) const {
    if (always_on()) {
        return true;
    }
    const std::int64_t offset = t.time_since_epoch().count() - kReferenceMonday;
    const std::int64_t in_week = offset - floor_div(offset, kWeek) * kWeek;
    return std::any_of(windows_.begin(), windows_.end(), [&](const BusinessWindow& w) {
        const std::int64_t start = day_index(w.day) * kDay + w.begin;
        return in_week >= start && in_week < start - w.begin + w.end;
    });
}

std::int64_t BusinessCalendar::open_seconds_until(Timestamp t) const {
    const std::int64_t offset = t.time_since_epoch().count() - kReferenceMonday;
    if (always_on()) {
        return offset;
    }
    const std::int64_t weeks = floor_div(offset, kWeek);
    const std::int64_t in_week = offset - weeks * kWeek;
    std::int64_t total = weeks * week_total_;
    for (const auto& w : windows_) {
        const std::int64_t start = day_index(w.day) * kDay + w.begin;
        const std::int64_t len = w.end - w.begin;
        total += std::clamp<std::int64_t>(in_week - start, 0, len);
    }
    return total;
}

Timestamp BusinessCalendar::advance(Timestamp from, std::int64_t seconds) const {
    if (seconds < 0) {
        throw PreconditionError("cannot advance by a negative duration");
    }
    if (always_on()) {
        return from + std::chrono::seconds{seconds};
    }
    const std::int64_t target = open_seconds_until(from) + seconds;
    const std::int64_t weeks = floor_div(target, week_total_);
    std::int64_t rest = target - weeks * week_total_;
    for (const auto& w : windows_) {
        const std::int64_t len = w.end - w.begin;
        if (rest < len) {
            const std::int64_t offset = weeks * kWeek + day_index(w.day) * kDay + w.begin + rest;
            return Timestamp{std::chrono::seconds{offset + kReferenceMonday}};
        }
        rest -= len;
    }
    // Unreachable: rest < week_total_ = sum of window lengths.
    throw PreconditionError("calendar inversion failed");
}

std::string BusinessCalendar::to_string() const {
    if (always_on()) {
        return "24/7";
    }
    // Days sharing identical ranges are grouped, consecutive days as spans.
    std::array<std::string, 7> ranges;
    for (const auto& w : windows_) {
        auto& r = ranges[static_cast<std::size_t>(day_index(w.day))];
        r += (r.empty() ? "" : ",") + format_clock(w.begin) + "-" + format_clock(w.end);
    }
    std::vector<std::pair<std::string, std::vector<int>>> groups;
    for (int d = 0; d < 7; ++d) {
        if (ranges[static_cast<std::size_t>(d)].empty()) {
            continue;
        }
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == ranges[static_cast<std::size_t>(d)]; });
        if (it == groups.end()) {
            groups.push_back({ranges[static_cast<std::size_t>(d)], {d}});
        } else {
            it->second.push_back(d);
        }
    }
    std::string out;
    for (const auto& [range, days] : groups) {
        if (!out.empty()) {
            out += "; ";
        }
        std::string day_list;
        for (std::size_t i = 0; i < days.size();) {
            std::size_t j = i;
            while (j + 1 < days.size() && days[j + 1] == days[j] + 1) {
                ++j;
            }
            if (!day_list.empty()) {
                day_list += ",";
            }
            day_list += kDayNames[static_cast<std::size_t>(days[i])];
            if (j > i) {
                day_list += "-";
                day_list += kDayNames[static_cast<std::size_t>(days[j])];
            }
            i = j + 1;
        }
        out += day_list + " " + range;
    }
    return out;
}

std::int64_t business_seconds_between(const BusinessCalendar& cal, Timestamp t0, Timestamp t1) {
    if (t0 > t1) {
        throw PreconditionError("business_seconds_between: start after end");
    }
    return cal.open_seconds_until(t1) - cal.open_seconds_until(t0);
}

}  // namespace logsim
