#pragma once

#include <stdexcept>
#include <string>

namespace hyperdecay {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (dimension mismatch, bad order, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double worst_residual)
        : NumericalError(what), worst_residual_(worst_residual) {}
    double worst_residual() const noexcept { return worst_residual_; }

private:
    double worst_residual_;
};

class NearMultiplicityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Im tau vanishes on every sampling shell, so no finite contact order exists.
class OnAxisError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MissingGeometryError : public Error {
public:
    using Error::Error;
};

class UnstableModeError : public NumericalError {
public:
    UnstableModeError(const std::string& what, int branch, double im)
        : NumericalError(what), branch_(branch), im_(im) {}
    int branch() const noexcept { return branch_; }
    double im() const noexcept { return im_; }

private:
    int branch_;
    double im_;
};

class DegenerateFitError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SizeGuardError : public Error {
public:
    using Error::Error;
};

}  // namespace hyperdecay
