#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace evoscope {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when inputs violate an ordering / range precondition (e.g. t < s).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when numerical propagation or quadrature breaks down.
struct PropagationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a special-function construction has no valid solution.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Spectral (operator 2-) norm, largest singular value.
double spectral_norm(const Matrix& m);

/// 2-norm condition number; +inf for singular matrices.
double condition_number(const Matrix& m);

}  // namespace evoscope
