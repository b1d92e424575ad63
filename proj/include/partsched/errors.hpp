#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace partsched {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was given an instance or schedule outside its preconditions.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A schedule that had to be feasible was not.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, double search_space)
        : Error(what), search_space_(search_space) {}

    /// Upper bound on the number of search nodes the request would need.
    double search_space() const { return search_space_; }

private:
    double search_space_;
};

/// Malformed instance, schedule or metadata document.
class FormatError : public Error {
public:
    using Error::Error;
};

/// The exact search finished without finding any feasible schedule.
class ExhaustedError : public Error {
public:
    using Error::Error;
};

} // namespace partsched
