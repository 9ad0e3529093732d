#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "evoscope/linalg.hpp"

namespace evoscope {

/// Two-parameter evolution family U(t,s), t >= s >= 0, on a finite-dimensional
/// real state space. Immutable after construction; copies share state.
///
/// Scalar-form variants (ScalarPotential, ConstantDecay, rescalings of these)
/// expose the exponent in log domain through log_gain(), which is what every
/// sup-type computation uses to stay clear of overflow.
class EvolutionFamily {
public:
    /// g in E(t,s) = g(s) - g(t); the cocycle law holds exactly by construction.
    using Potential = std::function<double(double)>;
    /// Coefficient map t -> A(t) of dx/dt = A(t) x.
    using Coefficient = std::function<Matrix(double)>;

    static EvolutionFamily scalar_potential(Potential g, int dim = 1,
                                            std::string name = "scalar");
    static EvolutionFamily constant_decay(double rate, int dim = 1);
    /// step is the fixed RK4 step used for transition-matrix propagation.
    static EvolutionFamily matrix_ode(Coefficient a, int dim, double step,
                                      std::string name = "matrix_ode");
    /// U_lambda(t,s) = e^{-lambda (t-s)} U(t,s). Nested rescalings flatten,
    /// so rescale(rescale(F,a),b) evaluates bit-identically to rescale(F,a+b).
    static EvolutionFamily rescaled(const EvolutionFamily& inner, double shift);

    int dim() const;
    const std::string& name() const;
    double shift() const;

    /// True when the family is a scalar multiple of the identity and the
    /// multiplier is available in log domain.
    bool has_log_form() const;

    /// ln of the scalar factor of U(t,s); requires has_log_form().
    double log_gain(double t, double s) const;

    /// U(t,s). Throws DomainError for t < s or negative times.
    Matrix evaluate(double t, double s) const;

    /// Spectral norm of U(t,s) (exp of log_gain for scalar-form families; may
    /// overflow to +inf, callers that care use log_gain directly).
    double norm(double t, double s) const;

    /// || U(t,tau) U(tau,s) - U(t,s) ||, t >= tau >= s >= 0.
    double cocycle_residual(double t, double tau, double s) const;

    EvolutionFamily rescale(double shift) const;

    double ode_step() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit EvolutionFamily(std::shared_ptr<const Impl> impl);
};

/// Transition-matrix cache over a fixed time grid. U(t_j, t_i) is served as
/// Phi(t_j) Phi(t_i)^{-1} while cond(Phi(t_i)) stays below the guard, and by
/// direct re-propagation from t_i otherwise.
class FamilyEvalCache {
public:
    FamilyEvalCache(EvolutionFamily family, std::vector<double> grid,
                    double condition_guard = 1e8);

    const EvolutionFamily& family() const { return family_; }
    const std::vector<double>& grid() const { return grid_; }

    /// U(t_j, t_i), j >= i. Throws DomainError on j < i.
    Matrix transition(std::size_t j, std::size_t i) const;

    /// ln || U(t_j, t_i) ||.
    double log_norm(std::size_t j, std::size_t i) const;

    /// U(t_j, t_i) x without forming the full matrix where possible.
    Vector apply(std::size_t j, std::size_t i, const Vector& x) const;

    /// Adjacent transition U(t_{j+1}, t_j); matrix path only.
    const Matrix& step_transition(std::size_t j) const;

private:
    EvolutionFamily family_;
    std::vector<double> grid_;
    double condition_guard_;
    // scalar fast path: q[i] = -log_gain(t_i, 0)
    std::vector<double> q_;
    // matrix path: fundamental solutions, adjacent steps, inverse-use flags
    std::vector<Matrix> fundamental_;
    std::vector<Matrix> fundamental_inv_;
    std::vector<Matrix> steps_;
    std::vector<bool> invertible_ok_;
};

}  // namespace evoscope
