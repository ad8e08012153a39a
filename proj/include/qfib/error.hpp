#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfib {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two polynomials from rings with a different number of z variables.
class RingMismatch : public Error {
public:
    RingMismatch(int a, int b)
        : Error("ring mismatch: k=" + std::to_string(a) + " vs k=" + std::to_string(b)) {}
};

class InvalidShift : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class SizeLimitError : public Error {
public:
    using Error::Error;
};

class UnsupportedScheme : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error("syntax error at position " + std::to_string(position) + ": " + what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace qfib
