#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mainpath::csv {

// Reads one RFC-4180 record into `fields`. Returns false on clean EOF.
// Quoted fields may contain commas, doubled quotes, and newlines; both LF
// and CRLF endings are accepted.
inline bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) {
        return false;
    }
    std::string field;
    bool in_quotes = false;
    for (;;) {
        const int ci = in.get();
        if (ci == std::char_traits<char>::eof()) {
            break;
        }
        const char c = static_cast<char>(ci);
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            in_quotes = true;
            continue;
        }
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            continue;
        }
        if (c == '\r') {
            if (in.peek() == '\n') {
                in.get();
            }
            break;
        }
        if (c == '\n') {
            break;
        }
        field += c;
    }
    fields.push_back(std::move(field));
    return true;
}

// Drops a UTF-8 byte-order mark, if present, from the start of `s`.
inline void strip_bom(std::string& s) {
    if (s.size() >= 3 && s[0] == '\xEF' && s[1] == '\xBB' && s[2] == '\xBF') {
        s.erase(0, 3);
    }
}

inline bool needs_quoting(std::string_view s) {
    return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void write_field(std::ostream& os, std::string_view s) {
    if (!needs_quoting(s)) {
        os << s;
        return;
    }
    os << '"';
    for (const char c : s) {
        if (c == '"') {
            os << '"';
        }
        os << c;
    }
    os << '"';
}

inline void write_record(std::ostream& os, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            os << ',';
        }
        write_field(os, fields[i]);
    }
    os << '\n';
}

}  // namespace mainpath::csv
