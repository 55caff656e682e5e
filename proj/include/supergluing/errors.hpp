#pragma once

#include <stdexcept>
#include <string>

namespace sg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContextError : Error {
    using Error::Error;
};

struct RangeError : Error {
    using Error::Error;
};

struct UnsupportedSubstitution : Error {
    using Error::Error;
};

struct PoleError : Error {
    using Error::Error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct LevelError : Error {
    using Error::Error;
};

struct NeedsWindow : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line),
          column(column) {}
    int line;
    int column;
};

}  // namespace sg
