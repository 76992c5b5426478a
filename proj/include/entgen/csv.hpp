// csv.hpp — RFC-4180 CSV emission with round-trip number formatting

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace entgen::csv {

// %.17g: enough digits to reproduce every double exactly.
inline std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

class Writer {
public:
    explicit Writer(std::ostream& os) : os_(os) {}

    Writer& row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) os_ << ',';
            os_ << quote(fields[i]);
        }
        os_ << '\n';
        return *this;
    }

private:
    std::ostream& os_;
};

} // namespace entgen::csv
