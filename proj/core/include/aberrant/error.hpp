#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aberrant {

enum class ErrorKind {
    capacity,
    unknown_letter,
    dependent_generators,
    inconsistent_generator,
    estimability,
    precondition,
    identity_violation,
    infeasible,
    domain,
    no_candidate,
    parse,
    validation,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// command-line front end can map it onto a stable exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace aberrant
