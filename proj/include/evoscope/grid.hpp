#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "evoscope/linalg.hpp"

namespace evoscope {

/// Strictly increasing time grid on [0, T_max], first node at 0.
class TimeGrid {
public:
    static TimeGrid uniform(double t_max, double step);
    explicit TimeGrid(std::vector<double> points);

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double t_max() const { return points_.back(); }
    double step() const { return step_; }  // 0 for non-uniform grids
    bool uniform_grid() const { return step_ > 0.0; }

    /// Index of the node nearest to t (snapping); t must be in [0, T_max].
    std::size_t snap_index(double t) const;

    /// Exact node index for t; throws if t is not a node (1e-9 tolerance).
    std::size_t node_index(double t) const;

private:
    std::vector<double> points_;
    double step_ = 0.0;
};

/// A function [0, T_max] -> R^n sampled at the grid nodes, with
/// piecewise-linear interpolation between nodes. Immutable value type.
class GridFunction {
public:
    GridFunction(std::shared_ptr<const TimeGrid> grid, Matrix values);
    static GridFunction zero(std::shared_ptr<const TimeGrid> grid, int dim);

    const TimeGrid& grid() const { return *grid_; }
    const std::shared_ptr<const TimeGrid>& grid_ptr() const { return grid_; }
    int dim() const { return static_cast<int>(values_.rows()); }
    std::size_t size() const { return static_cast<std::size_t>(values_.cols()); }

    Vector value(std::size_t node) const { return values_.col(node); }
    const Matrix& values() const { return values_; }

    /// Piecewise-linear interpolant; exact at nodes. Throws outside [0, T_max].
    Vector interp(double t) const;

    double node_norm(std::size_t node) const { return values_.col(node).norm(); }
    double sup_norm() const;

    GridFunction scaled(double a) const;
    GridFunction plus(const GridFunction& other, double a = 1.0) const;
    /// Pointwise product with a scalar-valued weight on the same grid.
    GridFunction weighted(const GridFunction& weight) const;

    /// CSV export: header "t,v0,...,v{n-1}", 17 significant digits.
    void write_csv(std::ostream& out) const;

private:
    std::shared_ptr<const TimeGrid> grid_;
    Matrix values_;  // dim x N
};

/// Seeded generator of compactly supported triangle bumps with u(0) = 0.
class BumpGenerator {
public:
    BumpGenerator(std::shared_ptr<const TimeGrid> grid, int dim, std::uint64_t seed);
    GridFunction next();

private:
    std::shared_ptr<const TimeGrid> grid_;
    int dim_;
    std::uint64_t state_;
    double next_unit();
};

}  // namespace evoscope
