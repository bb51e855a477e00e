// errors.hpp
// Shared exception types. Plain std exceptions are used where they fit
// (std::invalid_argument for bad configs, std::domain_error for out-of-domain
// math inputs, std::logic_error for broken stream invariants); the types here
// carry extra context.

#pragma once

#include <stdexcept>
#include <string>

namespace twinsieve {

// Thrown when a statistic or fit is requested on too little data
// (e.g. normalizing a histogram with fewer than two events).
class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when the slope optimizer fails to converge; carries the last iterate.
class FitConvergenceError : public std::runtime_error {
public:
    FitConvergenceError(const std::string& what, double last_m)
        : std::runtime_error(what), last_m_(last_m) {}
    double last_iterate() const { return last_m_; }

private:
    double last_m_;
};

}  // namespace twinsieve
