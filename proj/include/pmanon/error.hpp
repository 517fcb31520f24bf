#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmanon {

// Runtime failure (I/O, solver limits, an emptied log).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input or parameters. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t pos)
        : ValidationError(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace pmanon
