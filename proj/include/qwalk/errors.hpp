#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Unreadable or malformed input, identifier mismatches, inconsistent counts.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite inputs or an iteration budget exhausted before convergence.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qwalk
