#pragma once

#include <stdexcept>
#include <string>

namespace minfilter {

/// Input data violates a contract (bad CSV, zero-sum column, disconnected
/// graph, annihilated filter column in strict mode, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed (eigensolver did not converge, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace minfilter
