#include "evoscope/semigroup.hpp"

#include <cmath>

namespace evoscope {

GridFunction semigroup_apply(const NormEngine& engine, double shift,
                             const GridFunction& u) {
    const TimeGrid& grid = engine.grid();
    if (u.grid().points() != grid.points())
        throw DomainError("function lives on a different grid");
    std::size_t k = grid.node_index(shift);  // throws when misaligned
    if (k == 0) return u;  // T(0) = Id exactly
    const std::size_t n = grid.size();
    Matrix v = Matrix::Zero(u.dim(), static_cast<Eigen::Index>(n));
    if (engine.family().has_log_form()) {
        for (std::size_t j = k + 1; j < n; ++j)
            v.col(static_cast<Eigen::Index>(j)) =
                std::exp(engine.family().log_gain(grid[j], grid[j - k])) *
                u.value(j - k);
    } else {
        for (std::size_t j = k + 1; j < n; ++j)
            v.col(static_cast<Eigen::Index>(j)) =
                engine.cache().apply(j, j - k, u.value(j - k));
    }
    return GridFunction(u.grid_ptr(), std::move(v));
}

double semigroup_law_residual(const NormEngine& engine, double alpha, double t,
                              double s, const GridFunction& u) {
    auto lhs = semigroup_apply(engine, t, semigroup_apply(engine, s, u));
    auto rhs = semigroup_apply(engine, t + s, u);
    return engine.phi_profile(alpha, lhs.plus(rhs, -1.0)).norm;
}

double growth_bound_margin(const NormEngine& engine, double alpha, double t,
                           const GridFunction& u) {
    double nu = engine.phi_profile(alpha, u).norm;
    double ntu = engine.phi_profile(alpha, semigroup_apply(engine, t, u)).norm;
    return std::exp(alpha * t) * nu - ntu;
}

std::vector<std::pair<double, double>> strong_continuity_probe(
    const NormEngine& engine, double alpha, const GridFunction& u,
    const std::vector<double>& shifts) {
    std::vector<std::pair<double, double>> table;
    table.reserve(shifts.size());
    for (double t : shifts) {
        auto diff = semigroup_apply(engine, t, u).plus(u, -1.0);
        table.emplace_back(t, engine.phi_profile(alpha, diff).norm);
    }
    return table;
}

double rescaling_invariance_deviation(const NormEngine& engine, double alpha,
                                      double lambda, const GridFunction& u) {
    NormEngine shifted(engine.family().rescale(lambda), engine.grid_ptr(),
                       engine.sampler(), engine.tols());
    auto base = engine.phi_profile(alpha, u);
    auto moved = shifted.phi_profile(alpha - lambda, u);
    double worst = 0.0;
    for (std::size_t i = 0; i < base.phi.size(); ++i)
        worst = std::max(worst, std::abs(moved.phi[i] - base.phi[i]));
    return worst;
}

}  // namespace evoscope
