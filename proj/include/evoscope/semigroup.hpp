#pragma once

#include "evoscope/norms.hpp"

namespace evoscope {

/// (T_alpha(t) u)(s) = U(s, s - t) u(s - t) for s > t, zero for s <= t.
/// The shift must be a grid node so nodes map to nodes exactly.
GridFunction semigroup_apply(const NormEngine& engine, double shift,
                             const GridFunction& u);

/// || T(t)(T(s)u) - T(t+s)u ||_{U,alpha}.
double semigroup_law_residual(const NormEngine& engine, double alpha, double t,
                              double s, const GridFunction& u);

/// e^{alpha t} ||u||_{U,alpha} - ||T_alpha(t) u||_{U,alpha}.
double growth_bound_margin(const NormEngine& engine, double alpha, double t,
                           const GridFunction& u);

/// (shift, ||T(shift)u - u||_{U,alpha}) per requested shift.
std::vector<std::pair<double, double>> strong_continuity_probe(
    const NormEngine& engine, double alpha, const GridFunction& u,
    const std::vector<double>& shifts);

/// max_t | phi_{U_lambda, alpha - lambda}(t, u) - phi_{U, alpha}(t, u) |.
double rescaling_invariance_deviation(const NormEngine& engine, double alpha,
                                      double lambda, const GridFunction& u);

}  // namespace evoscope
