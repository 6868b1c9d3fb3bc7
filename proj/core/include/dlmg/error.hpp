#pragma once

#include <stdexcept>
#include <string>

namespace dlmg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shapes of operators/states do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Input outside the domain where a formula or model is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

// Iterative solve or integration gave up. residual() is the best value reached.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class NonUniqueSteadyState : public Error {
public:
    NonUniqueSteadyState(const std::string& what, double gap)
        : Error(what), gap_(gap) {}
    // max-abs distance between two independently converged fixed points
    double gap() const { return gap_; }

private:
    double gap_;
};

}  // namespace dlmg
