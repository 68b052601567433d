#ifndef SDR_ERRORS_HPP
#define SDR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdr {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad or unreadable input: missing files, malformed headers, out-of-range
/// parameters, wrong query kind.
class InputError : public Error {
public:
    using Error::Error;
};

/// The atom budget cannot be met even at the top of the epsilon bracket.
class BudgetError : public Error {
public:
    BudgetError(const std::string& msg, int min_achievable)
        : Error(msg), min_achievable(min_achievable) {}
    int min_achievable;
};

/// Hardware-geometry or basis-size constraint violated (strict spacing,
/// too many atoms for the requested basis mode, merge collapse).
class HardwareError : public Error {
public:
    using Error::Error;
};

/// Integrator norm drift exceeded the abort threshold (step too large).
class NormDriftError : public Error {
public:
    NormDriftError(const std::string& msg, double drift)
        : Error(msg), drift(drift) {}
    double drift;
};

/// Manifest/entry-file problems: missing files, checksum mismatch,
/// duplicate ids, unsupported schema.
class DatabaseError : public Error {
public:
    using Error::Error;
};

/// A database with zero entries where at least one is required.
class EmptyDatabaseError : public Error {
public:
    using Error::Error;
};

}  // namespace sdr

#endif
