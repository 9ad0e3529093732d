#pragma once

#include "evoscope/family.hpp"
#include "evoscope/grid.hpp"

namespace evoscope {

/// Trapezoidal cutoff: 0 on [0, rise_start], linear ramp up over rise_width,
/// 1 up to fall_start, linear ramp down over fall_width, then 0.
struct PlateauSpec {
    double rise_start = 0.0;
    double rise_width = 0.0;
    double fall_start = 0.0;
    double fall_width = 0.0;

    void validate(double t_max) const;
    double value(double t) const;
};

/// Ramp width theta_n = ln(e^n / (e^n - 1)).
double ramp_width(int n);

GridFunction make_plateau(const PlateauSpec& spec,
                          std::shared_ptr<const TimeGrid> grid);

/// f_n(xi) = cutoff(xi) e^{-alpha (xi - s)} U(xi, s) x, cutoff ramping up over
/// theta_n after s, flat to s + n, ramping down over theta_n.
GridFunction make_witness_f(const EvolutionFamily& family, double alpha,
                            double s, const Vector& x, int n,
                            std::shared_ptr<const TimeGrid> grid);

/// g_{n,k}(xi) = cutoff(xi) (xi - s)^k U(xi, s) x, same cutoff as above.
GridFunction make_witness_g(const EvolutionFamily& family, double s,
                            const Vector& x, int k, int n,
                            std::shared_ptr<const TimeGrid> grid);

/// x on [0, s], e^{nu (xi - s)} U(xi, s) x beyond.
GridFunction make_u_tilde(const EvolutionFamily& family, double nu, double s,
                          const Vector& x, std::shared_ptr<const TimeGrid> grid);

/// Pointwise product with a scalar plateau weight on the same grid.
GridFunction scale_truncate(const GridFunction& u, const GridFunction& plateau);

struct PsiWitness {
    GridFunction u;
    GridFunction f;
    double s = 0.0;    // snapped anchor
    double t_peak = 0.0;  // snapped switch to the exponential branch
    double q0 = 0.0;   // start of the quadratic patch
    double delta = 0.0;  // patch length
};

/// C^1 profile psi: 0 up to q0, quadratic patch of length delta, tangent
/// line, then e^{(t - s)/n} from t_peak on. Returns u = psi U(.,s)x and
/// f = psi' U(.,s)x. Requires t_peak > s + n.
PsiWitness make_psi_ratio_witness(const EvolutionFamily& family, int n,
                                  double s, const Vector& x, double t_peak,
                                  std::shared_ptr<const TimeGrid> grid);

/// Grid node t > s + n maximizing (t - s)/n + ln||U(t,s)||; the natural
/// t_peak for the ratio witness on scalar-form families.
double psi_anchor_time(const EvolutionFamily& family, int n, double s,
                       const TimeGrid& grid);

}  // namespace evoscope
