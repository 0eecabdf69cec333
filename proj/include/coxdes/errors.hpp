#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coxdes {

/// Malformed group or sequence text. `position` is a 0-based byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A group parameter outside its family's admissible range, e.g. D:3.
class RangeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Enumeration or exact computation would exceed a configured limit.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An identity that must hold exactly was violated (recursion mismatch,
/// inexact division, negative transition mass, ...).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace coxdes
