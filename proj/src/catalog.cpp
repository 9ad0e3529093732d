#include "evoscope/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "evoscope/exponents.hpp"
#include "evoscope/generator.hpp"
#include "evoscope/witness.hpp"

namespace evoscope {

namespace {

double example1_potential(double t) { return t * (2.0 + std::sin(t)); }

double example2_potential(double t) {
    if (t <= 0.0) return 0.0;  // continuous extension at 0
    return t * (std::sqrt(2.0) + std::sin(std::log(t)));
}

EvolutionFamily family_from_spec(const FamilySpec& spec, double h);

EvolutionFamily base_family(const std::string& kind, const FamilySpec& spec,
                            double h) {
    if (kind == "scalar_example1")
        return EvolutionFamily::scalar_potential(example1_potential, spec.dim,
                                                 "scalar_example1");
    if (kind == "scalar_example2")
        return EvolutionFamily::scalar_potential(example2_potential, spec.dim,
                                                 "scalar_example2");
    if (kind == "constant_decay")
        return EvolutionFamily::constant_decay(spec.rate, spec.dim);
    if (kind == "matrix_ode") {
        if (spec.ode_matrix != "rotation")
            throw ParseError("unknown ode_matrix: " + spec.ode_matrix);
        Matrix a(2, 2);
        a << 0.0, 1.0, -1.0, 0.0;
        return EvolutionFamily::matrix_ode([a](double) { return a; }, 2, h,
                                           "matrix_rotation");
    }
    throw ParseError("unknown family kind: " + kind);
}

EvolutionFamily family_from_spec(const FamilySpec& spec, double h) {
    if (spec.kind == "rescaled") {
        if (spec.inner.empty())
            throw ParseError("rescaled family needs family.inner");
        return base_family(spec.inner, spec, h).rescale(spec.shift);
    }
    return base_family(spec.kind, spec, h);
}

ExponentConfig exponent_config(const AnalysisConfig& cfg) {
    ExponentConfig e;
    e.blowup_threshold = cfg.theta;
    e.blowup_log_margin = cfg.blowup_log_margin;
    e.growth_tol = cfg.tol_growth;
    return e;
}

FactResult near(std::string id, double expected, double measured, double tol,
                std::string note = "") {
    FactResult r{std::move(id), expected, measured, tol,
                 std::abs(measured - expected) <= tol, std::move(note)};
    return r;
}

FactResult flag(std::string id, bool pass, double measured,
                std::string note = "") {
    FactResult r{std::move(id), 1.0, measured, 0.0, pass, std::move(note)};
    return r;
}

GridFunction constant_direction(const NormEngine& e, double v = 1.0) {
    Matrix m = Matrix::Constant(e.family().dim(),
                                static_cast<Eigen::Index>(e.grid().size()), v);
    return GridFunction(e.grid_ptr(), std::move(m));
}

std::vector<KnownFact> example1_facts() {
    return {
        {"ex1.inf_admissible", "left endpoint of the admissible set is -1",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             double v = inf_admissible(e, cfg.bracket_lo, cfg.bracket_hi,
                                       cfg.bisect_tol, exponent_config(cfg));
             return near("ex1.inf_admissible", -1.0, v, 0.05);
         }},
        {"ex1.bohl_divergent", "no uniform exponential bound",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             auto b = bohl_exponent(e, e.grid().t_max() / 5.0,
                                    exponent_config(cfg));
             return flag("ex1.bohl_divergent", b.divergent,
                         b.divergent ? 1.0 : 0.0, "window sup keeps growing");
         }},
        {"ex1.no_strict_exponent", "no admissible exponent is strict",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             int strict = 0;
             for (double a : {-1.0, 0.0, 5.0})
                 if (is_strict(e, a, exponent_config(cfg))) ++strict;
             return near("ex1.no_strict_exponent", 0.0, strict, 0.0);
         }},
        {"ex1.quasineg_bound", "norms of C(U,0) and C(U,-1) within e^{2 pi}",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             auto rep = e.quasi_negativity(0.0, 1.0, cfg.n_dirs, cfg.seed);
             bool pass = rep.equivalent &&
                         rep.k_measured <= std::exp(2.0 * M_PI) * 1.01;
             return flag("ex1.quasineg_bound", pass, rep.k_measured);
         }},
        {"ex1.weight_peak", "W_{-1}(pi/2) = e^{pi}",
         [](const NormEngine& e, const AnalysisConfig&) {
             auto wp = e.weight_profile(-1.0);
             double v = wp.w[e.grid().snap_index(M_PI / 2.0)];
             return near("ex1.weight_peak", std::exp(M_PI), v,
                         0.01 * std::exp(M_PI));
         }},
        {"ex1.phi_const_dir", "phi_{-1}(pi/2, 1) = e^{pi}",
         [](const NormEngine& e, const AnalysisConfig&) {
             double v = e.phi(-1.0, e.grid().snap_index(M_PI / 2.0),
                              constant_direction(e));
             return near("ex1.phi_const_dir", std::exp(M_PI), v,
                         0.01 * std::exp(M_PI));
         }},
    };
}

std::vector<KnownFact> example2_facts() {
    return {
        {"ex2.inf_admissible", "left endpoint is 1 - sqrt(2)",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             double v = inf_admissible(e, cfg.bracket_lo, cfg.bracket_hi,
                                       cfg.bisect_tol, exponent_config(cfg));
             return near("ex2.inf_admissible", 1.0 - std::sqrt(2.0), v, 0.05);
         }},
        {"ex2.uniform_bound", "||U(t,s)|| <= 1, i.e. W_0 <= 1",
         [](const NormEngine& e, const AnalysisConfig&) {
             auto wp = e.weight_profile(0.0);
             double m = *std::max_element(wp.w.begin(), wp.w.end());
             return flag("ex2.uniform_bound", m <= 1.0 + 1e-9, m);
         }},
        {"ex2.strict_at_zero", "0 is a strict exponent",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             bool s = is_strict(e, 0.0, exponent_config(cfg));
             return flag("ex2.strict_at_zero", s, s ? 1.0 : 0.0);
         }},
        {"ex2.not_strict_negative", "-0.2 is admissible but not strict",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             auto ec = exponent_config(cfg);
             bool adm = is_admissible(e, -0.2, ec).admissible;
             bool s = adm && is_strict(e, -0.2, ec);
             return flag("ex2.not_strict_negative", adm && !s, s ? 1.0 : 0.0);
         }},
        {"ex2.quasineg_diverges", "C(U,0) != C(U,-0.2)",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             auto rep = e.quasi_negativity(0.0, 0.2, cfg.n_dirs, cfg.seed);
             return flag("ex2.quasineg_diverges", !rep.equivalent,
                         rep.window_growth);
         }},
        {"ex2.psi_ratio", "ratio witness at n=8 gives norm ratio near 8",
         [](const NormEngine& e, const AnalysisConfig&) {
             double s = 38.0;
             double tp = psi_anchor_time(e.family(), 8, s, e.grid());
             auto w = make_psi_ratio_witness(e.family(), 8, s, Vector::Ones(1),
                                             tp, e.grid_ptr());
             double r = e.phi_profile(0.0, w.u).norm /
                        e.phi_profile(0.0, w.f).norm;
             return near("ex2.psi_ratio", 8.0, r, 0.8);
         }},
    };
}

std::vector<KnownFact> constant_decay_facts() {
    return {
        {"cd.lyapunov", "K_L = -1",
         [](const NormEngine& e, const AnalysisConfig&) {
             return near("cd.lyapunov", -1.0, lyapunov_exponent(e), 0.01);
         }},
        {"cd.bohl", "K_B = -1, no divergence",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             auto b = bohl_exponent(e, e.grid().t_max() / 5.0,
                                    exponent_config(cfg));
             return near("cd.bohl", -1.0, b.value, b.divergent ? -1.0 : 0.01);
         }},
        {"cd.inf_admissible", "left endpoint is -1",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             double v = inf_admissible(e, -3.0, 0.0, cfg.bisect_tol,
                                       exponent_config(cfg));
             return near("cd.inf_admissible", -1.0, v, 0.05);
         }},
        {"cd.phi_is_norm", "phi_0(t,u) = ||u(t)|| pointwise",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             BumpGenerator gen(e.grid_ptr(), 1, cfg.seed);
             auto u = gen.next();
             auto p = e.phi_profile(0.0, u);
             double worst = 0.0;
             for (std::size_t i = 0; i < p.phi.size(); ++i)
                 worst = std::max(worst, std::abs(p.phi[i] - u.node_norm(i)));
             return near("cd.phi_is_norm", 0.0, worst, 1e-12);
         }},
        {"cd.resolvent_norm", "||G^{-1}|| = 1 at alpha 0",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             auto est = estimate_resolvent_norm(
                 e, 0.0, BatteryConfig{cfg.n_bumps, cfg.seed});
             return near("cd.resolvent_norm", 1.0, est.c, 0.1);
         }},
        {"cd.certified_rate", "delta = 1/2 certifies decay rate >= 0.45",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             auto est = estimate_resolvent_norm(
                 e, 0.0, BatteryConfig{cfg.n_bumps, cfg.seed});
             auto v = certify_stability(e, 0.0, est, 0.5, cfg.c_safety);
             return flag("cd.certified_rate", v.certified && v.rate >= 0.45,
                         v.rate);
         }},
        {"cd.inverse_closed_form", "u_f(2) = 2 e^{-2} for f(x) = x e^{-x}",
         [](const NormEngine& e, const AnalysisConfig&) {
             const auto& grid = e.grid();
             Matrix m(1, static_cast<Eigen::Index>(grid.size()));
             for (std::size_t j = 0; j < grid.size(); ++j)
                 m(0, static_cast<Eigen::Index>(j)) =
                     grid[j] * std::exp(-grid[j]);
             auto u = apply_inverse(e.family(), GridFunction(e.grid_ptr(), m));
             double v = u.value(grid.node_index(2.0))(0);
             return near("cd.inverse_closed_form", 2.0 * std::exp(-2.0), v,
                         1e-4);
         }},
    };
}

std::vector<KnownFact> rotation_facts() {
    return {
        {"rot.cocycle", "cocycle residual at (2,1,0)",
         [](const NormEngine& e, const AnalysisConfig&) {
             return near("rot.cocycle", 0.0,
                         e.family().cocycle_residual(2.0, 1.0, 0.0), 1e-6);
         }},
        {"rot.closed_form", "U(2,0) equals the rotation by -2",
         [](const NormEngine& e, const AnalysisConfig&) {
             Matrix r(2, 2);
             r << std::cos(2.0), std::sin(2.0), -std::sin(2.0), std::cos(2.0);
             double v = spectral_norm(e.family().evaluate(2.0, 0.0) - r);
             return near("rot.closed_form", 0.0, v, 1e-6);
         }},
        {"rot.isometric_weight", "W_0 = 1 (norm-preserving flow)",
         [](const NormEngine& e, const AnalysisConfig&) {
             auto wp = e.weight_profile(0.0);
             double worst = 0.0;
             for (double w : wp.w) worst = std::max(worst, std::abs(w - 1.0));
             return near("rot.isometric_weight", 0.0, worst, 1e-6);
         }},
        {"rot.inf_admissible", "admissibility boundary at 0",
         [](const NormEngine& e, const AnalysisConfig& cfg) {
             double v = inf_admissible(e, cfg.bracket_lo, cfg.bracket_hi,
                                       cfg.bisect_tol, exponent_config(cfg));
             return near("rot.inf_admissible", 0.0, v, 0.2,
                         "short horizon softens the verdict");
         }},
    };
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> cat;
    {
        CatalogEntry e;
        e.name = "scalar_example1";
        e.describe =
            "scalar family with potential t(2 + sin t); nonuniformly "
            "exponentially stable, no uniform bound";
        e.recommended = parse_config("family.kind = scalar_example1");
        e.facts = example1_facts();
        cat.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "scalar_example2";
        e.describe =
            "scalar family with potential t(sqrt 2 + sin ln t); uniformly "
            "bounded, asymptotically but not uniformly stable";
        e.recommended = parse_config("family.kind = scalar_example2");
        e.facts = example2_facts();
        cat.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "constant_decay";
        e.describe = "U(t,s) = e^{-rate (t-s)} Id";
        e.recommended = parse_config("family.kind = constant_decay");
        e.facts = constant_decay_facts();
        cat.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "matrix_rotation";
        e.describe = "planar rotation flow, propagated by fixed-step RK4";
        e.recommended = parse_config("family.kind = matrix_ode");
        e.facts = rotation_facts();
        cat.push_back(std::move(e));
    }
    return cat;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> cat = build_catalog();
    return cat;
}

}  // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& e : catalog()) names.push_back(e.name);
    return names;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw DomainError("unknown catalog entry: " + name);
}

EvolutionFamily build_family(const AnalysisConfig& cfg) {
    return family_from_spec(cfg.family, cfg.h);
}

NormEngine make_engine(const AnalysisConfig& cfg) {
    auto grid = std::make_shared<const TimeGrid>(
        TimeGrid::uniform(cfg.t_max, cfg.h));
    SupSampler sampler = cfg.sup_mode == "log_augmented"
                             ? SupSampler::log_augmented(*grid, cfg.t_sup,
                                                         cfg.n_log)
                             : SupSampler::linear(*grid);
    NormTols tols{cfg.tol_zero, cfg.tol_tail, cfg.tol_growth};
    return NormEngine(build_family(cfg), std::move(grid), std::move(sampler),
                      tols);
}

std::vector<FactResult> run_known_facts(const std::string& name) {
    const auto& entry = catalog_entry(name);
    NormEngine engine = make_engine(entry.recommended);
    std::vector<FactResult> results;
    for (const auto& fact : entry.facts)
        results.push_back(fact.check(engine, entry.recommended));
    return results;
}

}  // namespace evoscope
