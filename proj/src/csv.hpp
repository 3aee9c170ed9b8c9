#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace logsim::detail {

// RFC 4180 style reader: comma separated, double-quote quoting with "" as an
// escaped quote, LF or CRLF line endings, quoted fields may span lines.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Reads the next record into `fields`. Returns false at end of input.
    bool next(std::vector<std::string>& fields);

    // Physical line number on which the last returned record started (1-based).
    std::size_t record_line() const noexcept { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
    bool first_ = true;
};

void write_csv_field(std::string& out, std::string_view field);

}  // namespace logsim::detail
