#pragma once

#include <stdexcept>
#include <string>

namespace swipt {

/// Invalid argument or out-of-range parameter.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Channel vector with zero norm; no beam direction exists.
class DegenerateChannelError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A caller broke an operation's precondition (e.g. simultaneous charge and
/// discharge handed to trade_state).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Minimum harvested-energy demand cannot be met for any splitting ratio.
class InfeasibleWetError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Problem too large for the requested method (grid oracle, sweep budget).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Malformed instance or config document. The message starts with the JSON
/// path of the offending field.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace swipt
