#pragma once

#include <stdexcept>
#include <string>

namespace ekrlab {

// Input outside the mathematical domain of an operation (n <= 2k, q = 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A configured size or time cap was exceeded. Never silently approximated.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed hypergraph file or other textual input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument violates an operation's precondition (non-clique input, d <= 0, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace ekrlab
