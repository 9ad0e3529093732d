#include "evoscope/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evoscope {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// values(j) = m(t_j) U(t_j, s) x for nodes t_j >= s (zero before), with the
// multiplier m supplied in log domain so scalar families never overflow.
GridFunction modulated_trajectory(const EvolutionFamily& family,
                                  std::shared_ptr<const TimeGrid> grid,
                                  double s, const Vector& x,
                                  const std::function<double(double)>& log_m) {
    const auto& pts = grid->points();
    Matrix v = Matrix::Zero(x.size(), static_cast<Eigen::Index>(pts.size()));
    std::size_t start = 0;
    while (start < pts.size() && pts[start] < s) ++start;
    if (family.has_log_form()) {
        for (std::size_t j = start; j < pts.size(); ++j) {
            double lm = log_m(pts[j]);
            if (lm == kNegInf) continue;
            v.col(static_cast<Eigen::Index>(j)) =
                std::exp(lm + family.log_gain(pts[j], s)) * x;
        }
    } else {
        Vector w = x;
        double prev = s;
        for (std::size_t j = start; j < pts.size(); ++j) {
            w = family.evaluate(pts[j], prev) * w;
            prev = pts[j];
            double lm = log_m(pts[j]);
            if (lm == kNegInf) continue;
            v.col(static_cast<Eigen::Index>(j)) = std::exp(lm) * w;
        }
    }
    return GridFunction(std::move(grid), std::move(v));
}

}  // namespace

void PlateauSpec::validate(double t_max) const {
    if (!(rise_width > 0.0) || !(fall_width > 0.0))
        throw DomainError("plateau ramp widths must be positive");
    if (!(rise_start >= 0.0) || rise_start + rise_width > fall_start)
        throw DomainError("plateau needs rise_start + rise_width <= fall_start");
    if (fall_start + fall_width > t_max + 1e-12)
        throw DomainError("plateau extends beyond the horizon");
}

double PlateauSpec::value(double t) const {
    if (t <= rise_start) return 0.0;
    if (t < rise_start + rise_width) return (t - rise_start) / rise_width;
    if (t <= fall_start) return 1.0;
    if (t < fall_start + fall_width)
        return 1.0 - (t - fall_start) / fall_width;
    return 0.0;
}

double ramp_width(int n) {
    if (n < 1) throw DomainError("ramp_width needs n >= 1");
    // ln(e^n / (e^n - 1)) = -ln(1 - e^{-n})
    return -std::log1p(-std::exp(-n));
}

GridFunction make_plateau(const PlateauSpec& spec,
                          std::shared_ptr<const TimeGrid> grid) {
    spec.validate(grid->t_max());
    const auto& pts = grid->points();
    Matrix v(1, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t j = 0; j < pts.size(); ++j)
        v(0, static_cast<Eigen::Index>(j)) = spec.value(pts[j]);
    return GridFunction(std::move(grid), std::move(v));
}

namespace {

PlateauSpec step1_cutoff(double s, int n, double t_max) {
    if (n < 1) throw DomainError("witness needs n >= 1");
    double theta = std::max(ramp_width(n), 1e-12);
    PlateauSpec spec;
    spec.rise_start = s;
    spec.rise_width = theta;
    spec.fall_start = s + static_cast<double>(n);
    spec.fall_width = theta;
    if (spec.fall_start + spec.fall_width > t_max)
        throw DomainError("horizon too short for the requested witness");
    return spec;
}

}  // namespace

GridFunction make_witness_f(const EvolutionFamily& family, double alpha,
                            double s, const Vector& x, int n,
                            std::shared_ptr<const TimeGrid> grid) {
    auto spec = step1_cutoff(s, n, grid->t_max());
    return modulated_trajectory(family, std::move(grid), s, x,
                                [spec, alpha, s](double t) {
                                    double c = spec.value(t);
                                    if (c <= 0.0) return kNegInf;
                                    return std::log(c) - alpha * (t - s);
                                });
}

GridFunction make_witness_g(const EvolutionFamily& family, double s,
                            const Vector& x, int k, int n,
                            std::shared_ptr<const TimeGrid> grid) {
    if (k < 0) throw DomainError("witness power k must be >= 0");
    auto spec = step1_cutoff(s, n, grid->t_max());
    return modulated_trajectory(
        family, std::move(grid), s, x, [spec, s, k](double t) {
            double c = spec.value(t);
            if (c <= 0.0 || (k > 0 && t <= s)) return kNegInf;
            return std::log(c) + static_cast<double>(k) * std::log(t - s);
        });
}

GridFunction make_u_tilde(const EvolutionFamily& family, double nu, double s,
                          const Vector& x,
                          std::shared_ptr<const TimeGrid> grid) {
    if (x.norm() == 0.0) throw DomainError("u_tilde needs a nonzero direction");
    const auto& pts = grid->points();
    auto tail = modulated_trajectory(family, grid, s, x, [nu, s](double t) {
        return nu * (t - s);
    });
    Matrix v = tail.values();
    for (std::size_t j = 0; j < pts.size() && pts[j] < s; ++j)
        v.col(static_cast<Eigen::Index>(j)) = x;
    return GridFunction(std::move(grid), std::move(v));
}

GridFunction scale_truncate(const GridFunction& u, const GridFunction& plateau) {
    return u.weighted(plateau);
}

PsiWitness make_psi_ratio_witness(const EvolutionFamily& family, int n,
                                  double s, const Vector& x, double t_peak,
                                  std::shared_ptr<const TimeGrid> grid) {
    if (n < 1) throw DomainError("ratio witness needs n >= 1");
    if (x.norm() == 0.0) throw DomainError("ratio witness needs x != 0");
    s = (*grid)[grid->snap_index(s)];
    t_peak = (*grid)[grid->snap_index(t_peak)];
    double dn = static_cast<double>(n);
    if (!(t_peak > s + dn))
        throw ConstructionError("ratio witness needs t_peak > s + n");

    // exponential branch e^{(t-s)/n} from t_peak; its tangent line has slope
    // mu and root t_zero = t_peak - n; a quadratic a (t-q0)^2 joins the line
    // tangentially at p = 2 t_zero - q0, which is C^1 by construction.
    double t_zero = t_peak - dn;
    double q0 = std::max(s, t_peak - 1.5 * dn);
    if (!(t_zero > q0))
        throw ConstructionError("no room for the quadratic patch");
    double p = 2.0 * t_zero - q0;
    double log_mu = (t_peak - s) / dn - std::log(dn);
    double log_a = log_mu - std::log(2.0 * (p - q0));

    auto log_psi = [=](double t) {
        if (t <= q0) return kNegInf;
        if (t <= p) return log_a + 2.0 * std::log(t - q0);
        if (t <= t_peak) return log_mu + std::log(t - t_zero);
        return (t - s) / dn;
    };
    auto log_dpsi = [=](double t) {
        if (t <= q0) return kNegInf;
        if (t <= p) return log_a + std::log(2.0 * (t - q0));
        if (t <= t_peak) return log_mu;
        return (t - s) / dn - std::log(dn);
    };

    PsiWitness w{modulated_trajectory(family, grid, s, x, log_psi),
                 modulated_trajectory(family, grid, s, x, log_dpsi),
                 s,
                 t_peak,
                 q0,
                 p - q0};
    return w;
}

double psi_anchor_time(const EvolutionFamily& family, int n, double s,
                       const TimeGrid& grid) {
    if (!family.has_log_form())
        throw DomainError("anchor search needs a scalar-form family");
    s = grid[grid.snap_index(s)];
    double dn = static_cast<double>(n);
    // the witness pair attains ratio n exactly when the exponential-branch
    // sup A* = max_{tau >= t_peak} [(tau - s)/n + log_gain(tau, s)] dominates
    // the ramp contribution P = (t_peak - s)/n + log_gain(q0, s); pick the
    // peak maximizing min(0, A* - P), preferring the earliest node on ties
    double best = kNegInf;
    double arg = kNegInf;
    double suffix = kNegInf;
    for (std::size_t j = grid.size(); j-- > 0;) {
        double t = grid[j];
        if (!(t > s)) break;
        suffix = std::max(suffix, (t - s) / dn + family.log_gain(t, s));
        if (!(t > s + dn)) continue;
        double q0 = std::max(s, t - 1.5 * dn);
        double penalty = (t - s) / dn + family.log_gain(q0, s);
        double v = std::min(0.0, suffix - penalty);
        if (v >= best) {
            best = v;
            arg = t;
        }
    }
    if (best == kNegInf)
        throw ConstructionError("grid too short for an anchor beyond s + n");
    return arg;
}

}  // namespace evoscope
