#pragma once

#include <stdexcept>
#include <string>

namespace hbnqm {

/// Integration/root-finding failure (tolerance not met, step underflow,
/// bracket not found). Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// File or format problem. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hbnqm
