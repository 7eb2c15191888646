#pragma once

#include <stdexcept>
#include <string>

namespace tw {

/// Argument outside the mathematical domain of a function (non-finite input, etc.).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller supplied an invalid parameter (size, range, mismatched rules).
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed: singular factorization, non-convergence, blow-up.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Backward Painleve integration blew up before reaching the requested endpoint.
class instability_error : public numerical_error {
public:
    instability_error(const std::string& what, double reached)
        : numerical_error(what), reached_(reached) {}
    double reached() const noexcept { return reached_; }

private:
    double reached_;
};

/// TASEP activity touched the edge of the simulated window.
class window_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened or written.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tw
