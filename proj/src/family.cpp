#include "evoscope/family.hpp"

#include <cmath>
#include <utility>

namespace evoscope {

double spectral_norm(const Matrix& m) {
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    // Jacobi SVD converges to relative 1e-10 comfortably at these sizes.
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double condition_number(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

namespace {

void check_ordering(double t, double s) {
    if (!(s >= 0.0) || !std::isfinite(t) || !std::isfinite(s))
        throw DomainError("times must be finite and nonnegative");
    if (t < s) throw DomainError("evaluate requires t >= s");
}

// One RK4 step of X' = A(t) X.
Matrix rk4_step(const EvolutionFamily::Coefficient& a, double t, double h,
                const Matrix& x) {
    Matrix k1 = a(t) * x;
    Matrix k2 = a(t + 0.5 * h) * (x + 0.5 * h * k1);
    Matrix k3 = a(t + 0.5 * h) * (x + 0.5 * h * k2);
    Matrix k4 = a(t + h) * (x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Matrix propagate(const EvolutionFamily::Coefficient& a, int dim, double step,
                 double t, double s) {
    Matrix x = Matrix::Identity(dim, dim);
    double span = t - s;
    if (span == 0.0) return x;
    auto n = static_cast<long>(std::ceil(span / step - 1e-9));
    if (n < 1) n = 1;
    double h = span / static_cast<double>(n);
    if (!(h > 0.0) || s + h == s)
        throw PropagationError("ODE step underflow");
    for (long i = 0; i < n; ++i) {
        x = rk4_step(a, s + h * static_cast<double>(i), h, x);
        if (!x.allFinite()) throw PropagationError("ODE propagation diverged");
    }
    return x;
}

}  // namespace

struct EvolutionFamily::Impl {
    enum class Kind { Scalar, MatrixOde } kind = Kind::Scalar;
    int dim = 1;
    std::string name;
    double shift = 0.0;  // accumulated rescaling
    Potential g;         // scalar path
    Coefficient a;       // matrix path
    double step = 0.01;  // matrix path
};

EvolutionFamily::EvolutionFamily(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

EvolutionFamily EvolutionFamily::scalar_potential(Potential g, int dim,
                                                  std::string name) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::Scalar;
    impl->dim = dim;
    impl->g = std::move(g);
    impl->name = std::move(name);
    return EvolutionFamily(impl);
}

EvolutionFamily EvolutionFamily::constant_decay(double rate, int dim) {
    return scalar_potential([rate](double t) { return rate * t; }, dim,
                            "constant_decay");
}

EvolutionFamily EvolutionFamily::matrix_ode(Coefficient a, int dim, double step,
                                            std::string name) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::MatrixOde;
    impl->dim = dim;
    impl->a = std::move(a);
    impl->step = step;
    impl->name = std::move(name);
    return EvolutionFamily(impl);
}

EvolutionFamily EvolutionFamily::rescaled(const EvolutionFamily& inner,
                                          double shift) {
    auto impl = std::make_shared<Impl>(*inner.impl_);
    impl->shift = inner.impl_->shift + shift;
    return EvolutionFamily(impl);
}

EvolutionFamily EvolutionFamily::rescale(double shift) const {
    return rescaled(*this, shift);
}

int EvolutionFamily::dim() const { return impl_->dim; }
const std::string& EvolutionFamily::name() const { return impl_->name; }
double EvolutionFamily::shift() const { return impl_->shift; }
double EvolutionFamily::ode_step() const { return impl_->step; }

bool EvolutionFamily::has_log_form() const {
    return impl_->kind == Impl::Kind::Scalar;
}

double EvolutionFamily::log_gain(double t, double s) const {
    check_ordering(t, s);
    if (!has_log_form()) throw DomainError("log_gain needs a scalar-form family");
    return impl_->g(s) - impl_->g(t) - impl_->shift * (t - s);
}

Matrix EvolutionFamily::evaluate(double t, double s) const {
    check_ordering(t, s);
    if (has_log_form())
        return std::exp(log_gain(t, s)) * Matrix::Identity(impl_->dim, impl_->dim);
    Matrix u = propagate(impl_->a, impl_->dim, impl_->step, t, s);
    if (impl_->shift != 0.0) u *= std::exp(-impl_->shift * (t - s));
    return u;
}

double EvolutionFamily::norm(double t, double s) const {
    if (has_log_form()) return std::exp(log_gain(t, s));
    return spectral_norm(evaluate(t, s));
}

double EvolutionFamily::cocycle_residual(double t, double tau, double s) const {
    if (!(t >= tau && tau >= s)) throw DomainError("need t >= tau >= s");
    return spectral_norm(evaluate(t, tau) * evaluate(tau, s) - evaluate(t, s));
}

FamilyEvalCache::FamilyEvalCache(EvolutionFamily family,
                                 std::vector<double> grid,
                                 double condition_guard)
    : family_(std::move(family)),
      grid_(std::move(grid)),
      condition_guard_(condition_guard) {
    if (grid_.empty() || grid_.front() != 0.0)
        throw DomainError("cache grid must start at 0");
    for (std::size_t i = 1; i < grid_.size(); ++i)
        if (!(grid_[i] > grid_[i - 1]))
            throw DomainError("cache grid must be strictly increasing");

    if (family_.has_log_form()) {
        q_.resize(grid_.size());
        for (std::size_t i = 0; i < grid_.size(); ++i)
            q_[i] = -family_.log_gain(grid_[i], 0.0);
        return;
    }
    fundamental_.resize(grid_.size());
    fundamental_inv_.resize(grid_.size());
    invertible_ok_.resize(grid_.size());
    steps_.resize(grid_.size() > 0 ? grid_.size() - 1 : 0);
    Matrix phi = Matrix::Identity(family_.dim(), family_.dim());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (i > 0) {
            steps_[i - 1] = family_.evaluate(grid_[i], grid_[i - 1]);
            phi = steps_[i - 1] * phi;
        }
        fundamental_[i] = phi;
        bool ok = condition_number(phi) < condition_guard_;
        invertible_ok_[i] = ok;
        fundamental_inv_[i] = ok ? phi.inverse() : Matrix();
    }
}

Matrix FamilyEvalCache::transition(std::size_t j, std::size_t i) const {
    if (j < i || j >= grid_.size()) throw DomainError("cache lookup needs j >= i in range");
    if (family_.has_log_form())
        return std::exp(q_[i] - q_[j]) *
               Matrix::Identity(family_.dim(), family_.dim());
    if (j == i) return Matrix::Identity(family_.dim(), family_.dim());
    if (invertible_ok_[i]) return fundamental_[j] * fundamental_inv_[i];
    return family_.evaluate(grid_[j], grid_[i]);
}

double FamilyEvalCache::log_norm(std::size_t j, std::size_t i) const {
    if (j < i || j >= grid_.size()) throw DomainError("cache lookup needs j >= i in range");
    if (family_.has_log_form()) return q_[i] - q_[j];
    return std::log(spectral_norm(transition(j, i)));
}

const Matrix& FamilyEvalCache::step_transition(std::size_t j) const {
    if (family_.has_log_form() || j + 1 >= grid_.size())
        throw DomainError("step_transition is a matrix-path lookup");
    return steps_[j];
}

Vector FamilyEvalCache::apply(std::size_t j, std::size_t i, const Vector& x) const {
    if (family_.has_log_form()) {
        if (j < i || j >= grid_.size()) throw DomainError("cache lookup needs j >= i in range");
        return std::exp(q_[i] - q_[j]) * x;
    }
    return transition(j, i) * x;
}

}  // namespace evoscope
