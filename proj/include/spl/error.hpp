#pragma once

#include <stdexcept>
#include <string>

namespace spl {

// Base class for everything this library throws on contract violations
// (malformed input, invalid positions, precondition failures).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by the text-format parsers, so callers can tell malformed input
// from semantic failures. For character-level parsers `offset` is the
// 0-based byte offset at which the problem was detected and is rendered
// into the message; line-based parsers use the single-argument form (the
// message carries the line number) and offset() == npos.
class ParseError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit ParseError(const std::string& what) : Error(what) {}

    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_ = npos;
};

} // namespace spl
