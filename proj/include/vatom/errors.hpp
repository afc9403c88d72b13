#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace vatom {

// Precondition violations (bad arguments, malformed input).
class InvalidInputError : public std::invalid_argument {
public:
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation requested exactly at a branch point of a multivalued function.
class SingularPointError : public std::domain_error {
public:
    explicit SingularPointError(const std::string& what) : std::domain_error(what) {}
};

// Adaptive quadrature ran out of budget before reaching the tolerance.
// Carries the best estimate obtained so far.
class QuadratureFailureError : public std::runtime_error {
public:
    QuadratureFailureError(const std::string& what, std::complex<double> best,
                           double err_estimate)
        : std::runtime_error(what), best_estimate(best), error_estimate(err_estimate) {}

    std::complex<double> best_estimate;
    double error_estimate;
};

// SLD defining equation could not be satisfied on the support of rho.
class SldInconsistencyError : public std::runtime_error {
public:
    explicit SldInconsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// Fisher matrix is numerically singular; simultaneous bound undefined.
class SingularFisherError : public std::runtime_error {
public:
    explicit SingularFisherError(const std::string& what) : std::runtime_error(what) {}
};

// Fixed-step ODE integration lost unitarity (step size too large).
class IntegrationError : public std::runtime_error {
public:
    explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

// Scenario configuration file could not be parsed.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line_no = -1)
        : std::runtime_error(line_no > 0 ? what + " (line " + std::to_string(line_no) + ")"
                                         : what),
          line(line_no) {}
    int line;
};

} // namespace vatom
