#pragma once

#include "pipelink/errors.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

// Internal text helpers shared by the CSV readers/writers. Numbers are
// printed with %.12g: enough digits that values survive a round-trip at the
// precision the toolkit cares about, short enough to stay readable.
namespace pipelink::detail {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            return fields;
        }
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
}

/// Strict double parse: the whole field must be consumed.
inline double parse_double_field(const std::string& field, const char* what,
                                 std::size_t line_no) {
    if (field.empty())
        throw ValidationError(std::string("empty ") + what + " field on line "
                              + std::to_string(line_no));
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size())
        throw ValidationError(std::string("non-numeric ") + what + " field '" + field
                              + "' on line " + std::to_string(line_no));
    return v;
}

/// Write the "# ..." artifact comment (skipped when empty).
template <typename Stream>
void write_comment(Stream& os, const std::string& comment) {
    if (!comment.empty())
        os << "# " << comment << "\n";
}

} // namespace pipelink::detail
