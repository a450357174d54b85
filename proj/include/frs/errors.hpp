#pragma once

#include <stdexcept>
#include <string>

namespace frs {

// Error taxonomy mirrored by the CLI exit codes: malformed input (2),
// fail-with-witness (3, not an exception), degenerate/fragment issues (4),
// budget exhaustion (5).
enum class ErrorKind {
    malformed,
    budget,
    signature_mismatch,
    fragment_incomplete,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct MalformedError : Error {
    explicit MalformedError(const std::string& m) : Error(ErrorKind::malformed, m) {}
};

struct BudgetError : Error {
    explicit BudgetError(const std::string& m) : Error(ErrorKind::budget, m) {}
};

struct SignatureError : Error {
    explicit SignatureError(const std::string& m) : Error(ErrorKind::signature_mismatch, m) {}
};

struct FragmentError : Error {
    explicit FragmentError(const std::string& m) : Error(ErrorKind::fragment_incomplete, m) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& m) : Error(ErrorKind::internal, m) {}
};

} // namespace frs
