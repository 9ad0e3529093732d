#include "evoscope/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace evoscope {

TimeGrid TimeGrid::uniform(double t_max, double step) {
    if (!(step > 0.0) || !(t_max >= 10.0 * step))
        throw DomainError("uniform grid needs step > 0 and t_max >= 10*step");
    auto n = static_cast<std::size_t>(std::llround(t_max / step));
    std::vector<double> pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) pts[i] = step * static_cast<double>(i);
    pts.back() = t_max;
    TimeGrid g(std::move(pts));
    g.step_ = step;
    return g;
}

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty() || points_.front() != 0.0)
        throw DomainError("grid must start at 0");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i] > points_[i - 1]))
            throw DomainError("grid must be strictly increasing");
}

std::size_t TimeGrid::snap_index(double t) const {
    if (t < 0.0 || t > t_max() + 1e-12)
        throw DomainError("time outside [0, T_max]");
    if (uniform_grid()) {
        auto i = static_cast<long long>(std::llround(t / step_));
        i = std::clamp<long long>(i, 0, static_cast<long long>(size()) - 1);
        return static_cast<std::size_t>(i);
    }
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    if (it == points_.end()) return size() - 1;
    if (it == points_.begin()) return 0;
    std::size_t hi = static_cast<std::size_t>(it - points_.begin());
    return (t - points_[hi - 1] <= points_[hi] - t) ? hi - 1 : hi;
}

std::size_t TimeGrid::node_index(double t) const {
    std::size_t i = snap_index(t);
    if (std::abs(points_[i] - t) > 1e-9)
        throw DomainError("time is not a grid node");
    return i;
}

GridFunction::GridFunction(std::shared_ptr<const TimeGrid> grid, Matrix values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.cols()) != grid_->size())
        throw DomainError("values/grid size mismatch");
    if (!values_.allFinite()) throw DomainError("grid function values must be finite");
}

GridFunction GridFunction::zero(std::shared_ptr<const TimeGrid> grid, int dim) {
    Matrix v = Matrix::Zero(dim, static_cast<Eigen::Index>(grid->size()));
    return GridFunction(std::move(grid), std::move(v));
}

Vector GridFunction::interp(double t) const {
    const auto& pts = grid_->points();
    if (t < 0.0 || t > pts.back() + 1e-12)
        throw DomainError("interp outside [0, T_max]");
    t = std::min(t, pts.back());
    auto it = std::upper_bound(pts.begin(), pts.end(), t);
    if (it == pts.begin()) return values_.col(0);
    if (it == pts.end()) return values_.col(values_.cols() - 1);
    std::size_t hi = static_cast<std::size_t>(it - pts.begin());
    std::size_t lo = hi - 1;
    double w = (t - pts[lo]) / (pts[hi] - pts[lo]);
    return (1.0 - w) * values_.col(lo) + w * values_.col(hi);
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (Eigen::Index j = 0; j < values_.cols(); ++j)
        m = std::max(m, values_.col(j).norm());
    return m;
}

GridFunction GridFunction::scaled(double a) const {
    return GridFunction(grid_, a * values_);
}

GridFunction GridFunction::plus(const GridFunction& other, double a) const {
    if (other.grid_ != grid_ && other.grid_->points() != grid_->points())
        throw DomainError("grid mismatch");
    return GridFunction(grid_, values_ + a * other.values_);
}

GridFunction GridFunction::weighted(const GridFunction& weight) const {
    if (weight.dim() != 1) throw DomainError("weight must be scalar-valued");
    if (weight.grid_ != grid_ && weight.grid_->points() != grid_->points())
        throw DomainError("grid mismatch");
    Matrix v = values_;
    for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j) *= weight.values_(0, j);
    return GridFunction(grid_, std::move(v));
}

void GridFunction::write_csv(std::ostream& out) const {
    out << "t";
    for (int k = 0; k < dim(); ++k) out << ",v" << k;
    out << "\n";
    char buf[32];
    for (std::size_t j = 0; j < size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", (*grid_)[j]);
        out << buf;
        for (int k = 0; k < dim(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", values_(k, static_cast<Eigen::Index>(j)));
            out << "," << buf;
        }
        out << "\n";
    }
}

BumpGenerator::BumpGenerator(std::shared_ptr<const TimeGrid> grid, int dim,
                             std::uint64_t seed)
    : grid_(std::move(grid)), dim_(dim), state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

double BumpGenerator::next_unit() {
    // splitmix64; deterministic across platforms
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

GridFunction BumpGenerator::next() {
    const double t_max = grid_->t_max();
    // keep bumps in the front fifth of the horizon so weights stay sane on
    // long nonuniform horizons
    double lo = 0.02 * t_max, hi = 0.2 * t_max;
    double center = lo + (hi - lo) * next_unit();
    double width = std::max(4.0 * (grid_->uniform_grid() ? grid_->step() : 1e-2),
                            0.05 * t_max * next_unit());
    Vector dir(dim_);
    for (int k = 0; k < dim_; ++k) dir(k) = 2.0 * next_unit() - 1.0;
    if (dir.norm() == 0.0) dir(0) = 1.0;
    dir.normalize();
    double amp = 0.1 + 2.0 * next_unit();

    Matrix v = Matrix::Zero(dim_, static_cast<Eigen::Index>(grid_->size()));
    for (std::size_t j = 0; j < grid_->size(); ++j) {
        double t = (*grid_)[j];
        double w = 1.0 - std::abs(t - center) / width;
        if (w > 0.0 && t > 0.0) v.col(static_cast<Eigen::Index>(j)) = amp * w * dir;
    }
    return GridFunction(grid_, std::move(v));
}

}  // namespace evoscope
