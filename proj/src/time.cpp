#include "logsim/time.hpp"

#include <cctype>
#include <cstdio>

namespace logsim {
namespace {

bool read_digits(std::string_view text, std::size_t& pos, int min_width, int max_width, int& out) {
    int value = 0;
    int width = 0;
    while (width < max_width && pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        ++pos;
        ++width;
    }
    if (width < min_width) {
        return false;
    }
    out = value;
    return true;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text, std::string_view format) {
    int year = 1970, month = 1, day = 1, hour = 0, minute = 0, second = 0;
    std::size_t pos = 0;
    bool seconds_read = false;

    auto read_seconds = [&]() {
        if (!read_digits(text, pos, 1, 2, second)) {
            return false;
        }
        seconds_read = true;
        if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
            std::size_t frac = pos + 1;
            while (frac < text.size() && std::isdigit(static_cast<unsigned char>(text[frac]))) {
                ++frac;
            }
            if (frac > pos + 1) {
                pos = frac;
            }
        }
        return true;
    };

    for (std::size_t i = 0; i < format.size(); ++i) {
        char f = format[i];
        if (f != '%') {
            if (pos >= text.size() || text[pos] != f) {
                return std::nullopt;
            }
            ++pos;
            continue;
        }
        if (++i >= format.size()) {
            return std::nullopt;
        }
        bool ok = true;
        switch (format[i]) {
            case 'Y': ok = read_digits(text, pos, 4, 4, year); break;
            case 'm': ok = read_digits(text, pos, 1, 2, month); break;
            case 'd': ok = read_digits(text, pos, 1, 2, day); break;
            case 'H': ok = read_digits(text, pos, 1, 2, hour); break;
            case 'M': ok = read_digits(text, pos, 1, 2, minute); break;
            case 'S': ok = read_seconds(); break;
            case 'T':
                ok = read_digits(text, pos, 1, 2, hour) && pos < text.size() && text[pos++] == ':' &&
                     read_digits(text, pos, 1, 2, minute) && pos < text.size() &&
                     text[pos++] == ':' && read_seconds();
                break;
            case '%': ok = pos < text.size() && text[pos++] == '%'; break;
            default: return std::nullopt;
        }
        if (!ok) {
            return std::nullopt;
        }
    }
    if (seconds_read && pos < text.size() && text[pos] == 'Z') {
        ++pos;
    }
    if (pos != text.size()) {
        return std::nullopt;
    }

    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                             std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) {
        return std::nullopt;
    }
    return sys_days{ymd} + hours{hour} + minutes{minute} + seconds{second};
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    const auto day_start = floor<days>(t);
    const year_month_day ymd{day_start};
    const hh_mm_ss<seconds> tod{t - day_start};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d:%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()));
    return buf;
}

}  // namespace logsim
