#ifndef STABILCERT_ERRORS_HPP
#define STABILCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stabilcert {

// Invalid argument values (non-finite coordinates, p < 1, gamma <= 0, ...).
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Lookup outside a declared domain (e.g. dense-window entry off the window).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Requested method cannot handle the input (complex matrix at p in {1,inf}).
struct UnsupportedMethodError : std::logic_error {
    explicit UnsupportedMethodError(const std::string& what) : std::logic_error(what) {}
};

// Problem size exceeds a documented method cap.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Precondition of an operation violated (e.g. N0 <= bandwidth).
struct PreconditionError : std::logic_error {
    explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// Malformed operator-spec or report document.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A state the implementation considers impossible.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace stabilcert

#endif  // STABILCERT_ERRORS_HPP
