#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace logsim {

// All instants are UTC with second resolution.
using Timestamp = std::chrono::sys_seconds;

inline constexpr std::string_view kDefaultTimestampFormat = "%Y-%m-%d %H:%M:%S";

// Parses `text` against a strftime-style format. Supported directives are
// %Y %m %d %H %M %S %T (= %H:%M:%S) and %%. A fractional part directly after
// the seconds field is accepted and truncated, as is a trailing "Z".
// Returns nullopt on any mismatch or out-of-range field.
std::optional<Timestamp> parse_timestamp(std::string_view text,
                                         std::string_view format = kDefaultTimestampFormat);

// Always "YYYY-MM-DD HH:MM:SS".
std::string format_timestamp(Timestamp t);

}  // namespace logsim
