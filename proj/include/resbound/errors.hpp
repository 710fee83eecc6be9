#ifndef RESBOUND_ERRORS_HPP
#define RESBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace resbound {

/// Malformed or out-of-domain input (odd endpoint counts, 0 inside S, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to reach its stated tolerance.
class NumericFailure : public std::runtime_error {
public:
    explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

}

#endif
