#pragma once

#include <stdexcept>
#include <string>

namespace rwcut {

/// Malformed graph or partition text.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad vertex, overlapping sets, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameter combination outside the region where an algorithm is defined.
class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input that carries no usable signal (e.g. an all-zero sweep vector).
class DegenerateInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds a configured memory or work cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rwcut
