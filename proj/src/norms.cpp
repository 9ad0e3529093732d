#include "evoscope/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evoscope {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

SupSampler SupSampler::linear(const TimeGrid& grid) {
    SupSampler s;
    s.times = grid.points();
    s.grid_count = s.times.size();
    return s;
}

SupSampler SupSampler::log_augmented(const TimeGrid& grid, double t_sup,
                                     std::size_t n_log) {
    if (!(t_sup > grid.t_max())) throw DomainError("t_sup must exceed T_max");
    SupSampler s;
    s.times = grid.points();
    s.grid_count = s.times.size();
    double l0 = std::log(grid.t_max());
    double l1 = std::log(t_sup);
    for (std::size_t k = 1; k <= n_log; ++k) {
        double t = std::exp(l0 + (l1 - l0) * static_cast<double>(k) /
                                     static_cast<double>(n_log));
        if (t > s.times.back()) s.times.push_back(t);
    }
    return s;
}

NormEngine::NormEngine(EvolutionFamily family,
                       std::shared_ptr<const TimeGrid> grid, SupSampler sampler,
                       NormTols tols)
    : family_(std::move(family)),
      grid_(std::move(grid)),
      sampler_(std::move(sampler)),
      tols_(tols) {
    if (sampler_.grid_count != grid_->size())
        throw DomainError("sampler must extend the analysis grid");
    if (family_.has_log_form()) {
        q_.resize(sampler_.times.size());
        for (std::size_t i = 0; i < q_.size(); ++i)
            q_[i] = -family_.log_gain(sampler_.times[i], 0.0);
    } else {
        if (sampler_.times.size() != sampler_.grid_count)
            throw DomainError("log-augmented sampling needs a scalar-form family");
        cache_.emplace(family_, grid_->points());
    }
}

const FamilyEvalCache& NormEngine::cache() const {
    if (!cache_) throw DomainError("no transition cache for scalar-form families");
    return *cache_;
}

// S[i] = max_{k >= i} (-q[k] - alpha t[k]); logW at sample i is then
// q[i] + alpha t[i] + S[i].
std::vector<double> NormEngine::suffix_table(double alpha) const {
    std::vector<double> s(q_.size());
    double running = kNegInf;
    for (std::size_t k = q_.size(); k-- > 0;) {
        running = std::max(running, -q_[k] - alpha * sampler_.times[k]);
        s[k] = running;
    }
    return s;
}

std::vector<double> NormEngine::log_weight_samples(double alpha) const {
    if (family_.has_log_form()) {
        auto s = suffix_table(alpha);
        std::vector<double> lw(q_.size());
        for (std::size_t i = 0; i < q_.size(); ++i)
            lw[i] = q_[i] + alpha * sampler_.times[i] + s[i];
        return lw;
    }
    if (auto it = weight_memo_.find(alpha); it != weight_memo_.end())
        return it->second;
    // matrix path: propagate each row forward and track the weighted sup
    const std::size_t n = grid_->size();
    std::vector<double> lw(n);
    for (std::size_t i = 0; i < n; ++i) {
        Matrix p = Matrix::Identity(family_.dim(), family_.dim());
        double best = 0.0;  // tau = t term: ln 1
        for (std::size_t j = i; j < n; ++j) {
            if (j > i) p = cache_->step_transition(j - 1) * p;
            double v = std::log(spectral_norm(p)) -
                       alpha * ((*grid_)[j] - (*grid_)[i]);
            best = std::max(best, v);
        }
        lw[i] = best;
    }
    weight_memo_[alpha] = lw;
    return lw;
}

WeightProfile NormEngine::weight_profile(double alpha) const {
    WeightProfile wp;
    wp.alpha = alpha;
    auto lw = log_weight_samples(alpha);
    lw.resize(grid_->size());
    wp.log_w = std::move(lw);
    wp.w.resize(wp.log_w.size());
    for (std::size_t i = 0; i < wp.w.size(); ++i) wp.w[i] = std::exp(wp.log_w[i]);
    return wp;
}

double NormEngine::phi(double alpha, std::size_t node, const GridFunction& u) const {
    if (node >= grid_->size()) throw DomainError("node off grid");
    double nu = u.node_norm(node);
    if (nu == 0.0) return 0.0;
    if (family_.has_log_form()) {
        double t = sampler_.times[node];
        double best = kNegInf;
        for (std::size_t k = node; k < sampler_.times.size(); ++k)
            best = std::max(best, -q_[k] - alpha * sampler_.times[k]);
        return nu * std::exp(q_[node] + alpha * t + best);
    }
    Vector w = u.value(node);
    double t = (*grid_)[node];
    double best = nu;
    for (std::size_t j = node + 1; j < grid_->size(); ++j) {
        w = cache_->step_transition(j - 1) * w;
        best = std::max(best, std::exp(-alpha * ((*grid_)[j] - t)) * w.norm());
    }
    return best;
}

PhiProfile NormEngine::phi_profile(double alpha, const GridFunction& u) const {
    PhiProfile p;
    p.alpha = alpha;
    const std::size_t n = grid_->size();
    p.phi.resize(n);
    if (family_.has_log_form()) {
        auto s = suffix_table(alpha);
        for (std::size_t i = 0; i < n; ++i) {
            double nu = u.node_norm(i);
            p.phi[i] = nu == 0.0
                           ? 0.0
                           : nu * std::exp(q_[i] + alpha * sampler_.times[i] + s[i]);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) p.phi[i] = phi(alpha, i, u);
    }
    p.norm = 0.0;
    p.argmax_index = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (p.phi[i] > p.norm) {
            p.norm = p.phi[i];
            p.argmax_index = i;
        }
    }
    p.argmax_t = (*grid_)[p.argmax_index];
    return p;
}

double NormEngine::sandwich_violation(double alpha, const GridFunction& u) const {
    auto p = phi_profile(alpha, u);
    auto wp = weight_profile(alpha);
    double worst = kNegInf;
    for (std::size_t i = 0; i < grid_->size(); ++i) {
        double nu = u.node_norm(i);
        worst = std::max(worst, nu - p.phi[i]);
        worst = std::max(worst, p.phi[i] - wp.w[i] * nu);
    }
    return worst;
}

double NormEngine::monotonicity_violation(double alpha, double beta,
                                          const GridFunction& u) const {
    if (beta < alpha) throw DomainError("monotonicity check needs beta >= alpha");
    auto pa = phi_profile(alpha, u);
    auto pb = phi_profile(beta, u);
    double worst = kNegInf;
    for (std::size_t i = 0; i < grid_->size(); ++i)
        worst = std::max(worst, pb.phi[i] - pa.phi[i]);
    return worst;
}

Membership NormEngine::membership(double alpha, const GridFunction& u) const {
    auto p = phi_profile(alpha, u);
    Membership m;
    m.norm = p.norm;
    m.phi_at_zero = p.phi[0];
    double t_tail = 0.8 * grid_->t_max();
    m.tail_sup = 0.0;
    for (std::size_t i = 0; i < grid_->size(); ++i)
        if ((*grid_)[i] >= t_tail) m.tail_sup = std::max(m.tail_sup, p.phi[i]);
    m.member = m.phi_at_zero <= tols_.tol_zero_scale * (1.0 + m.norm) &&
               m.tail_sup <= tols_.tol_tail * m.norm;
    if (m.norm == 0.0) m.member = true;
    return m;
}

double NormEngine::log_phi_direction(double alpha, std::size_t sample_idx,
                                     const Vector& x) const {
    if (family_.has_log_form()) {
        double best = kNegInf;
        for (std::size_t k = sample_idx; k < sampler_.times.size(); ++k)
            best = std::max(best, -q_[k] - alpha * sampler_.times[k]);
        return std::log(x.norm()) + q_[sample_idx] +
               alpha * sampler_.times[sample_idx] + best;
    }
    Vector w = x;
    double t = (*grid_)[sample_idx];
    double best = std::log(x.norm());
    for (std::size_t j = sample_idx + 1; j < grid_->size(); ++j) {
        w = cache_->step_transition(j - 1) * w;
        best = std::max(best, std::log(w.norm()) - alpha * ((*grid_)[j] - t));
    }
    return best;
}

EquivalenceReport NormEngine::quasi_negativity(double alpha, double nu,
                                               std::size_t n_dirs,
                                               std::uint64_t seed) const {
    if (!(nu > 0.0)) throw DomainError("nu must be positive");
    if (alpha < -nu) throw DomainError("quasi-negativity test needs alpha >= -nu");
    EquivalenceReport rep;
    rep.alpha = alpha;
    rep.nu = nu;
    // look-ahead sups at the last samples are horizon-truncated; skip them
    const double t_cut = 0.8 * sampler_.t_sup();
    std::size_t m = sampler_.times.size();
    while (m > 1 && sampler_.times[m - 1] > t_cut) --m;
    const std::size_t half = m / 2;
    double early = kNegInf, late = kNegInf;

    if (family_.has_log_form()) {
        // ratio is direction-free: U is a scalar multiple of the identity
        auto sa = suffix_table(alpha);
        auto sn = suffix_table(-nu);
        for (std::size_t i = 0; i < m; ++i) {
            double r = (sn[i] - nu * sampler_.times[i]) -
                       (sa[i] + alpha * sampler_.times[i]);
            (i < half ? early : late) = std::max(i < half ? early : late, r);
        }
        rep.probes = "scalar family: direction-free ratio over all sample times";
    } else {
        std::vector<Vector> dirs;
        for (int k = 0; k < family_.dim(); ++k)
            dirs.push_back(Vector::Unit(family_.dim(), k));
        std::uint64_t st = seed;
        auto unit = [&st]() {
            st += 0x9E3779B97F4A7C15ull;
            std::uint64_t z = st;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
        };
        for (std::size_t d = 0; d < n_dirs; ++d) {
            Vector v(family_.dim());
            for (int k = 0; k < family_.dim(); ++k) v(k) = 2.0 * unit() - 1.0;
            if (v.norm() == 0.0) v(0) = 1.0;
            dirs.push_back(v.normalized());
        }
        // coarse s-scan keeps the matrix path affordable
        std::size_t stride = std::max<std::size_t>(1, m / 512);
        for (std::size_t i = 0; i < m; i += stride) {
            for (const auto& x : dirs) {
                double r = log_phi_direction(-nu, i, x) -
                           log_phi_direction(alpha, i, x);
                (i < half ? early : late) = std::max(i < half ? early : late, r);
            }
        }
        rep.probes = "coordinate + seeded random directions at strided nodes";
    }
    double k_log = std::max(early, late);
    rep.k_measured = std::exp(std::max(0.0, k_log));
    rep.window_growth = late - early;
    // the window sup may creep toward its asymptote, so tolerate growth
    // proportional to the magnitude of the ratio itself
    rep.equivalent =
        late <= early + std::log1p(tols_.tol_growth) * std::max(1.0, std::abs(early));
    return rep;
}

}  // namespace evoscope
