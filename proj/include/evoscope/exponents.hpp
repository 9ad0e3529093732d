#pragma once

#include <vector>

#include "evoscope/norms.hpp"

namespace evoscope {

struct ExponentConfig {
    /// log-domain margin for "a row sup is still growing at the horizon"
    double blowup_log_margin = 1.0;
    /// hard overflow cap; row sups beyond this are reported as +inf evidence
    double blowup_threshold = 1e12;
    double growth_tol = 0.05;    // strictness stabilization tolerance
    double bohl_margin = 0.5;    // window-growth margin for the +inf sentinel
    double bohl_floor = 0.25;    // a diverging Bohl estimate must clear this
};

struct AdmissibilityResult {
    bool admissible = false;
    double growth = 0.0;      // late-window minus early-window row sup (log)
    double evidence_t = 0.0;  // pair achieving the blow-up, when inadmissible
    double evidence_s = 0.0;
};

struct BohlResult {
    double value = 0.0;
    bool divergent = false;  // +inf sentinel
};

struct AlphaVerdict {
    double alpha = 0.0;
    bool admissible = false;
    bool strict = false;
};

struct ExponentReport {
    double k_l = 0.0;
    BohlResult k_b;
    double inf_a = 0.0;
    std::vector<AlphaVerdict> tested;
    bool nonuniform_exp_bounded = false;
    bool uniform_exp_bounded = false;
    bool nonuniform_exp_stable = false;
    bool uniform_exp_stable = false;
    std::string classification;
};

/// Discrete limsup proxy for ln||U(t,0)||/t over the late half of the sampler.
double lyapunov_exponent(const NormEngine& engine);

/// sup_s ln||U(s+t_gap, s)||/t_gap with a window-growth divergence sentinel.
BohlResult bohl_exponent(const NormEngine& engine, double t_gap,
                         const ExponentConfig& cfg = {});

AdmissibilityResult is_admissible(const NormEngine& engine, double alpha,
                                  const ExponentConfig& cfg = {});

/// Throws DomainError when alpha is not admissible.
bool is_strict(const NormEngine& engine, double alpha,
               const ExponentConfig& cfg = {});

/// Bisection on the admissibility verdict; needs admissible(hi) and
/// inadmissible(lo).
double inf_admissible(const NormEngine& engine, double alpha_lo,
                      double alpha_hi, double tol,
                      const ExponentConfig& cfg = {});

ExponentReport classify(const NormEngine& engine,
                        const std::vector<double>& alphas,
                        const ExponentConfig& cfg = {}, double bisect_tol = 0.02);

}  // namespace evoscope
