#include "hbnqm/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hbnqm::csv {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    auto push = [&] {
        const auto begin = current.find_first_not_of(" \t\r");
        if (begin == std::string::npos) {
            fields.emplace_back();
        } else {
            const auto end = current.find_last_not_of(" \t\r");
            fields.push_back(current.substr(begin, end - begin + 1));
        }
        current.clear();
    };
    for (char c : line) {
        if (c == ',') {
            push();
        } else {
            current += c;
        }
    }
    push();
    return fields;
}

std::string format(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    // Shortest representation that parses back exactly.
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == value) break;
    }
    return buf;
}

double parse_double(const std::string& field, const std::string& what) {
    if (field.empty()) throw std::invalid_argument(what + ": empty numeric field");
    if (field == "inf") return HUGE_VAL;
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw std::invalid_argument(what + ": not a number: \"" + field + "\"");
    }
    return v;
}

Writer::Writer(std::ostream& out) : out_(out) {}

void Writer::meta(const std::string& key, const std::string& value) {
    if (header_written_) throw std::logic_error("csv::Writer: meta after header");
    out_ << "# " << key << ": " << value << "\n";
}

void Writer::header(const std::vector<std::string>& names) {
    row(names);
    header_written_ = true;
}

void Writer::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << fields[i];
    }
    out_ << '\n';
}

} // namespace hbnqm::csv
