#pragma once

#include <cstdint>
#include <string>

#include "evoscope/norms.hpp"
#include "evoscope/witness.hpp"

namespace evoscope {

struct ResolventEstimate {
    double alpha = 0.0;
    double c = 0.0;  // max of ratio_history
    std::string witness_f;  // description of the maximizing test function
    int n_tests = 0;
    std::vector<double> ratio_history;
    bool unbounded = false;  // ratio trend grows ~2x per doubling of n
    double trend[3] = {0.0, 0.0, 0.0};  // per-n max ratio, n in {4, 8, 16}
};

struct StabilityVerdict {
    double alpha = 0.0;
    double c = 0.0;        // safety-inflated resolvent estimate used throughout
    double delta = 0.0;    // in (0,1)
    double rate = 0.0;     // delta / c
    double prefactor = 0.0;  // (c alpha + 1)/(1 - delta), times W_alpha(s)
    bool certified = false;
    std::string reason;
    double measured_margin = 0.0;  // min over samples of predicted - measured
    bool step1_ok = false;  // ||U(t,s)|| <= (c alpha + 1) W_alpha(s)
    bool step2_ok = false;  // ||g_{n,k}|| <= c^k k! (c alpha + 1) W_alpha(s)||x||
};

struct BatteryConfig {
    std::size_t n_bumps = 20;
    std::uint64_t seed = 0x5EED;
};

/// u_f(t) = integral_0^t U(t, xi) f(xi) d xi, composite trapezoid on grid
/// cells via the one-step recurrence u_j = U_j (u_{j-1} + h/2 f_{j-1}) + h/2 f_j.
GridFunction apply_inverse(const EvolutionFamily& family, const GridFunction& f);

/// (-1/alpha) ||f||_{U,alpha} - ||u_f||_{U,alpha}; alpha must be negative.
double resolvent_bound_margin(const NormEngine& engine, double alpha,
                              const GridFunction& f);

ResolventEstimate estimate_resolvent_norm(const NormEngine& engine, double alpha,
                                          const BatteryConfig& battery = {});

StabilityVerdict certify_stability(const NormEngine& engine, double alpha,
                                   const ResolventEstimate& resolvent,
                                   double delta, double c_safety = 1.05);

/// Best certified rate over delta in {0.25, 0.5, 0.75}.
StabilityVerdict certify_stability_sweep(const NormEngine& engine, double alpha,
                                         const ResolventEstimate& resolvent,
                                         double c_safety = 1.05);

/// || u_f(t) - U(t,s) u_f(s) - integral_s^t U(t,xi) f(xi) d xi || at nodes.
double inverse_consistency_residual(const EvolutionFamily& family,
                                    const GridFunction& f,
                                    const GridFunction& u_f,
                                    std::size_t s_node, std::size_t t_node);

}  // namespace evoscope
