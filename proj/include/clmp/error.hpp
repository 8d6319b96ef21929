#ifndef CLMP_ERROR_HPP
#define CLMP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace clmp {

/// Violated preconditions and malformed domain objects.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input file problems, with a 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Refused work that would exceed a configured size cap. The message reports
/// the candidate count so callers can decide whether to raise the cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace clmp

#endif
