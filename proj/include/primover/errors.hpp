#ifndef PRIMOVER_ERRORS_HPP
#define PRIMOVER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace primover {

/// Input outside an operation's domain (modulus < 2, non-prime where a
/// prime is required, a family hypothesis that does not hold, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NotCoprimeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A configured size cap (divisor count, enumeration bound) was hit.
class CapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace primover

#endif
