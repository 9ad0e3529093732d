#include "evoscope/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace evoscope {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln||U(t_j, t_i)|| over sampler indices.
std::function<double(std::size_t, std::size_t)> log_norm_fn(
    const NormEngine& engine) {
    if (engine.family().has_log_form()) {
        const auto& q = engine.sample_q();
        return [&q](std::size_t j, std::size_t i) { return q[i] - q[j]; };
    }
    const auto& cache = engine.cache();
    return [&cache](std::size_t j, std::size_t i) { return cache.log_norm(j, i); };
}

}  // namespace

double lyapunov_exponent(const NormEngine& engine) {
    const auto& times = engine.sampler().times;
    auto ln = log_norm_fn(engine);
    double best = kNegInf;
    for (std::size_t i = times.size() / 2; i < times.size(); ++i) {
        if (times[i] <= 0.0) continue;
        best = std::max(best, ln(i, 0) / times[i]);
    }
    return best;
}

BohlResult bohl_exponent(const NormEngine& engine, double t_gap,
                         const ExponentConfig& cfg) {
    const auto& times = engine.sampler().times;
    double t_max = engine.grid().t_max();
    if (!(t_gap >= t_max / 10.0 && t_gap <= t_max / 2.0))
        throw DomainError("t_gap must lie in [T_max/10, T_max/2]");

    std::vector<double> m;  // per-s gap-rate estimates, in sampler order
    if (engine.family().has_log_form()) {
        const auto& fam = engine.family();
        for (double s : times) {
            if (s + t_gap > engine.sampler().t_sup()) break;
            m.push_back(fam.log_gain(s + t_gap, s) / t_gap);
        }
    } else {
        const auto& cache = engine.cache();
        double h = engine.grid().step();
        auto k = static_cast<std::size_t>(std::llround(t_gap / h));
        for (std::size_t i = 0; i + k < engine.grid().size(); ++i)
            m.push_back(cache.log_norm(i + k, i) / (h * static_cast<double>(k)));
    }
    if (m.empty()) throw DomainError("gap exceeds the sampled horizon");

    // window sups over thirds; monotone growth across both splits marks a
    // sup that never stabilizes in s
    std::size_t third = m.size() / 3;
    double w1 = kNegInf, w2 = kNegInf, w3 = kNegInf;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double& w = i < third ? w1 : (i < 2 * third ? w2 : w3);
        w = std::max(w, m[i]);
    }
    BohlResult r;
    r.value = std::max({w1, w2, w3});
    r.divergent = (w2 - w1 > cfg.bohl_margin) && (w3 - w2 > cfg.bohl_margin) &&
                  r.value > cfg.bohl_floor;
    return r;
}

AdmissibilityResult is_admissible(const NormEngine& engine, double alpha,
                                  const ExponentConfig& cfg) {
    const auto& times = engine.sampler().times;
    auto ln = log_norm_fn(engine);
    const std::size_t m = times.size();
    AdmissibilityResult res;
    res.admissible = true;
    // rows: blow-up in a nonuniform family shows as a row sup that is still
    // climbing at the far end of the tau range, for some fixed s; rows sit at
    // small s so most of the horizon is available to confirm decay after a
    // late local surge
    const double t_max = engine.grid().t_max();
    std::size_t rows[3];
    const double row_times[] = {0.0, t_max / 200.0, t_max / 20.0};
    for (int r = 0; r < 3; ++r) {
        auto it = std::lower_bound(times.begin(), times.end(), row_times[r]);
        rows[r] = static_cast<std::size_t>(it - times.begin());
    }
    for (std::size_t s : rows) {
        if (s + 8 >= m) continue;
        std::size_t mid = s + (m - s) / 2;
        double early = kNegInf, late = kNegInf;
        std::size_t late_arg = mid;
        for (std::size_t j = s; j < m; ++j) {
            double v = ln(j, s) - alpha * (times[j] - times[s]);
            if (j < mid) {
                early = std::max(early, v);
            } else if (v > late) {
                late = v;
                late_arg = j;
            }
        }
        double growth = late - early;
        bool overflow = late > std::log(cfg.blowup_threshold) + early;
        if (growth > cfg.blowup_log_margin || overflow) {
            res.admissible = false;
            res.growth = std::max(res.growth, growth);
            res.evidence_t = times[late_arg];
            res.evidence_s = times[s];
        }
    }
    return res;
}

bool is_strict(const NormEngine& engine, double alpha,
               const ExponentConfig& cfg) {
    if (!is_admissible(engine, alpha, cfg).admissible)
        throw DomainError("is_strict needs an admissible exponent");
    auto lw = engine.log_weight_samples(alpha);
    std::size_t half = lw.size() / 2;
    double early = kNegInf, late = kNegInf;
    for (std::size_t i = 0; i < lw.size(); ++i)
        (i < half ? early : late) = std::max(i < half ? early : late, lw[i]);
    return late <= early + std::log1p(cfg.growth_tol);
}

double inf_admissible(const NormEngine& engine, double alpha_lo,
                      double alpha_hi, double tol, const ExponentConfig& cfg) {
    if (!(alpha_lo < alpha_hi) || !(tol > 0.0))
        throw DomainError("invalid bisection bracket");
    if (!is_admissible(engine, alpha_hi, cfg).admissible)
        throw DomainError("upper bracket endpoint must be admissible");
    if (is_admissible(engine, alpha_lo, cfg).admissible)
        throw DomainError("lower bracket endpoint must be inadmissible");
    while (alpha_hi - alpha_lo > tol) {
        double mid = 0.5 * (alpha_lo + alpha_hi);
        if (is_admissible(engine, mid, cfg).admissible)
            alpha_hi = mid;
        else
            alpha_lo = mid;
    }
    return 0.5 * (alpha_lo + alpha_hi);
}

ExponentReport classify(const NormEngine& engine,
                        const std::vector<double>& alphas,
                        const ExponentConfig& cfg, double bisect_tol) {
    ExponentReport rep;
    rep.k_l = lyapunov_exponent(engine);
    rep.k_b = bohl_exponent(engine, engine.grid().t_max() / 5.0, cfg);

    for (double a : alphas) {
        AlphaVerdict v;
        v.alpha = a;
        v.admissible = is_admissible(engine, a, cfg).admissible;
        v.strict = v.admissible && is_strict(engine, a, cfg);
        rep.tested.push_back(v);
        rep.nonuniform_exp_bounded |= v.admissible;
        rep.uniform_exp_bounded |= v.strict;
        rep.uniform_exp_stable |= v.strict && a < 0.0;
    }

    // bracket the admissibility boundary around the Lyapunov estimate
    double hi = rep.k_l + 0.5;
    for (int i = 0; i < 8 && !is_admissible(engine, hi, cfg).admissible; ++i)
        hi += std::pow(2.0, i);
    double lo = rep.k_l - 0.5;
    for (int i = 0; i < 8 && is_admissible(engine, lo, cfg).admissible; ++i)
        lo -= std::pow(2.0, i);
    rep.inf_a = inf_admissible(engine, lo, hi, bisect_tol, cfg);
    rep.nonuniform_exp_stable = rep.inf_a < 0.0;
    rep.nonuniform_exp_bounded = true;

    if (rep.uniform_exp_stable)
        rep.classification = "uniform_exp_stable";
    else if (rep.nonuniform_exp_stable)
        rep.classification = "nonuniform_exp_stable";
    else if (rep.uniform_exp_bounded)
        rep.classification = "uniform_exp_bounded";
    else
        rep.classification = "nonuniform_exp_bounded";
    return rep;
}

}  // namespace evoscope
