#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evoscope/family.hpp"
#include "evoscope/grid.hpp"

namespace evoscope {

/// Sample set over which the look-ahead sups are taken. The first grid_count
/// entries are exactly the analysis grid nodes; an optional log-spaced tail
/// in (T_max, T_sup] follows, for families whose extremes are periodic in
/// ln t and sit beyond any affordable linear horizon.
struct SupSampler {
    std::vector<double> times;
    std::size_t grid_count = 0;

    static SupSampler linear(const TimeGrid& grid);
    static SupSampler log_augmented(const TimeGrid& grid, double t_sup,
                                    std::size_t n_log);
    double t_sup() const { return times.back(); }
};

struct PhiProfile {
    double alpha = 0.0;
    std::vector<double> phi;     // one per grid node
    double norm = 0.0;           // sup of phi
    std::size_t argmax_index = 0;  // smallest maximizer
    double argmax_t = 0.0;
};

struct WeightProfile {
    double alpha = 0.0;
    std::vector<double> w;      // minimal envelope W_alpha at each grid node
    std::vector<double> log_w;  // same in log domain (always finite here)
};

struct Membership {
    bool member = false;
    double phi_at_zero = 0.0;
    double tail_sup = 0.0;
    double norm = 0.0;
};

struct EquivalenceReport {
    double alpha = 0.0;
    double nu = 0.0;
    double k_measured = 1.0;
    bool equivalent = false;
    double window_growth = 0.0;  // late-window sup / early-window sup, log domain
    std::string probes;
};

struct NormTols {
    double tol_zero_scale = 1e-9;
    double tol_tail = 1e-3;
    double tol_growth = 0.05;
};

/// Weighted-functional engine for one (family, grid, sampler) triple.
/// All sups are discrete sups over the sampler; scalar-form families are
/// handled entirely in log domain with O(N) suffix scans.
class NormEngine {
public:
    NormEngine(EvolutionFamily family, std::shared_ptr<const TimeGrid> grid,
               SupSampler sampler, NormTols tols = {});

    const EvolutionFamily& family() const { return family_; }
    const TimeGrid& grid() const { return *grid_; }
    const std::shared_ptr<const TimeGrid>& grid_ptr() const { return grid_; }
    const SupSampler& sampler() const { return sampler_; }
    const NormTols& tols() const { return tols_; }
    const FamilyEvalCache& cache() const;

    /// Scalar path: q[i] = -ln of the scalar factor of U(times[i], 0).
    /// Empty for matrix families.
    const std::vector<double>& sample_q() const { return q_; }

    /// phi_{U,alpha}(t, u) at a grid node.
    double phi(double alpha, std::size_t node, const GridFunction& u) const;

    PhiProfile phi_profile(double alpha, const GridFunction& u) const;

    /// ln W_alpha over all sampler times (not just grid nodes).
    std::vector<double> log_weight_samples(double alpha) const;

    WeightProfile weight_profile(double alpha) const;

    /// max over nodes of max(||u(t)|| - phi, phi - W_alpha(t)||u(t)||).
    double sandwich_violation(double alpha, const GridFunction& u) const;

    /// max over nodes of phi_beta - phi_alpha, beta >= alpha.
    double monotonicity_violation(double alpha, double beta,
                                  const GridFunction& u) const;

    Membership membership(double alpha, const GridFunction& u) const;

    /// Direction-sampled norm-equivalence test between C(U,alpha) and C(U,-nu).
    EquivalenceReport quasi_negativity(double alpha, double nu,
                                       std::size_t n_dirs, std::uint64_t seed) const;

    /// ln phi_{U,alpha}(s, x) for a constant-direction probe, s a sampler index.
    double log_phi_direction(double alpha, std::size_t sample_idx,
                             const Vector& x) const;

private:
    EvolutionFamily family_;
    std::shared_ptr<const TimeGrid> grid_;
    SupSampler sampler_;
    NormTols tols_;
    std::vector<double> q_;  // scalar path: q[i] = -log_gain(times[i], 0)
    std::optional<FamilyEvalCache> cache_;  // matrix path
    // the matrix-path weight scan is O(N^2); memoize per alpha
    mutable std::map<double, std::vector<double>> weight_memo_;

    std::vector<double> suffix_table(double alpha) const;
    std::vector<double> log_phi_nodes(double alpha, const GridFunction& u) const;
};

}  // namespace evoscope
