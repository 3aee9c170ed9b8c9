#include "csv.hpp"

#include "logsim/error.hpp"

namespace logsim::detail {

bool CsvReader::next(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (first_) {
        first_ = false;
        // UTF-8 byte order mark
        if (c == 0xEF) {
            if (in_.get() != 0xBB || in_.get() != 0xBF) {
                throw SchemaError("malformed byte order mark");
            }
            c = in_.get();
        }
    }
    if (c == std::char_traits<char>::eof()) {
        return false;
    }
    record_line_ = line_;

    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    while (true) {
        if (c == std::char_traits<char>::eof()) {
            if (quoted) {
                throw RowError(record_line_, "unterminated quoted field");
            }
            fields.push_back(std::move(field));
            return true;
        }
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') {
                    ++line_;
                }
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty() && !field_was_quoted) {
            quoted = true;
            field_was_quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (ch == '\r' && in_.peek() == '\n') {
            // handled on the following '\n'
        } else if (ch == '\n') {
            ++line_;
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
        }
        c = in_.get();
    }
}

void write_csv_field(std::string& out, std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        out.append(field);
        return;
    }
    out.push_back('"');
    for (char ch : field) {
        if (ch == '"') {
            out.push_back('"');
        }
        out.push_back(ch);
    }
    out.push_back('"');
}

}  // namespace logsim::detail
