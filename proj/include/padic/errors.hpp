#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padic {

// Raised when a caller breaks an operation's precondition (mismatched
// shapes, out-of-range intervals, empty blocks where a nonempty one is
// required, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Raised when an event would need more residues than the configured cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by the text-format parsers. position is a 0-based character
// offset into the input, token is the offending fragment.
class ParseError : public std::invalid_argument {
public:
    ParseError(std::string message, std::size_t position, std::string token)
        : std::invalid_argument(message + " at position " + std::to_string(position) +
                                " (token '" + token + "')"),
          position_(position),
          token_(std::move(token)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& token() const noexcept { return token_; }

private:
    std::size_t position_;
    std::string token_;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw ContractViolation(message);
}

}  // namespace padic
