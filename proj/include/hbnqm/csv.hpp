#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hbnqm {

// CSV dialect used for every tabular artifact: comma separator, decimal
// point, UTF-8, LF line endings, no quoting (fields never contain commas).
// '#'-prefixed lines are metadata/comments and skipped by readers.

namespace csv {

/// Split one line on commas, trimming surrounding whitespace and a
/// trailing CR.
std::vector<std::string> split(const std::string& line);

/// Shortest decimal form that round-trips a double; "inf"/"nan" spelled
/// out. Deterministic, locale-independent.
std::string format(double value);

/// Parse a double; empty strings are rejected. Throws std::invalid_argument
/// naming the field on garbage.
double parse_double(const std::string& field, const std::string& what);

/// Row-oriented writer. Metadata lines ("# key: value") precede the header.
class Writer {
public:
    explicit Writer(std::ostream& out);
    void meta(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
    bool header_written_ = false;
};

} // namespace csv

} // namespace hbnqm
