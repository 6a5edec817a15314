#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pres {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text: polynomial strings, group specs, cycle notation, JSON.
class ParseError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit ParseError(const std::string& what, std::size_t position = npos)
        : Error(position == npos ? what
                                 : what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// A precondition violated by the caller: wrong group kind, bad sizes, limits.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// An identity the library guarantees failed to hold. Always a defect.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace pres
