#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "evoscope/catalog.hpp"
#include "evoscope/exponents.hpp"
#include "evoscope/generator.hpp"
#include "evoscope/report.hpp"
#include "evoscope/semigroup.hpp"
#include "evoscope/witness.hpp"

namespace {

using namespace evoscope;

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string family;
    std::vector<double> alphas;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

AnalysisConfig load_config(const CliOptions& opt) {
    std::map<std::string, std::string> kv;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw ParseError("cannot read config: " + opt.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        kv = parse_key_values(ss.str());
    }
    if (!opt.family.empty()) {
        // catalog names map onto family kinds; matrix_rotation is the one alias
        kv["family.kind"] =
            opt.family == "matrix_rotation" ? "matrix_ode" : opt.family;
    }
    AnalysisConfig cfg = config_from_map(kv);
    if (!opt.alphas.empty()) cfg.alphas = opt.alphas;
    if (opt.seed_set) cfg.seed = opt.seed;
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (cfg.alphas.empty()) cfg.alphas = {0.0};
    return cfg;
}

std::ofstream open_out(const AnalysisConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream out(std::filesystem::path(cfg.out_dir) / name);
    if (!out) throw std::runtime_error("cannot write " + name);
    return out;
}

ExponentConfig exp_cfg(const AnalysisConfig& cfg) {
    ExponentConfig e;
    e.blowup_threshold = cfg.theta;
    e.blowup_log_margin = cfg.blowup_log_margin;
    e.growth_tol = cfg.tol_growth;
    return e;
}

int cmd_exponents(const AnalysisConfig& cfg) {
    auto engine = make_engine(cfg);
    auto report = classify(engine, cfg.alphas, exp_cfg(cfg), cfg.bisect_tol);
    auto csv = open_out(cfg, "exponents.csv");
    write_exponents_csv(csv, report);
    auto txt = open_out(cfg, "exponents.txt");
    write_exponent_report(txt, report);
    write_exponent_report(std::cout, report);
    return 0;
}

int cmd_admissible(const AnalysisConfig& cfg) {
    auto engine = make_engine(cfg);
    bool all = true;
    auto out = open_out(cfg, "admissible.txt");
    for (double a : cfg.alphas) {
        auto res = is_admissible(engine, a, exp_cfg(cfg));
        out << "alpha = " << format_full(a) << " -> "
            << (res.admissible ? "admissible" : "inadmissible");
        if (!res.admissible)
            out << " (growth " << format_full(res.growth) << " at t="
                << format_full(res.evidence_t) << ", s="
                << format_full(res.evidence_s) << ")";
        out << "\n";
        all = all && res.admissible;
    }
    double inf_a = inf_admissible(engine, cfg.bracket_lo, cfg.bracket_hi,
                                  cfg.bisect_tol, exp_cfg(cfg));
    out << "inf_a = " << format_full(inf_a) << "\n";
    std::cout << "inf_a = " << format_full(inf_a) << "\n";
    return all ? 0 : 1;
}

int cmd_phi(const AnalysisConfig& cfg) {
    auto engine = make_engine(cfg);
    BumpGenerator gen(engine.grid_ptr(), engine.family().dim(), cfg.seed);
    auto u = gen.next();
    double alpha = cfg.alphas.front();
    auto profile = engine.phi_profile(alpha, u);
    auto csv = open_out(cfg, "phi.csv");
    write_phi_csv(csv, engine.grid(), profile, u);
    double violation = engine.sandwich_violation(alpha, u);
    std::cout << "norm = " << format_full(profile.norm)
              << "\nargmax_t = " << format_full(profile.argmax_t)
              << "\nsandwich_violation = " << format_full(violation) << "\n";
    return violation <= 1e-12 ? 0 : 1;
}

int cmd_weight(const AnalysisConfig& cfg) {
    auto engine = make_engine(cfg);
    double alpha = cfg.alphas.front();
    auto profile = engine.weight_profile(alpha);
    auto csv = open_out(cfg, "weight.csv");
    write_weight_csv(csv, engine.grid(), profile);
    double min_w = *std::min_element(profile.w.begin(), profile.w.end());
    std::cout << "min_W = " << format_full(min_w) << "\n";
    return min_w >= 1.0 - 1e-9 ? 0 : 1;  // W(s) >= ||U(s,s)|| = 1
}

int cmd_semigroup(const AnalysisConfig& cfg) {
    auto engine = make_engine(cfg);
    BumpGenerator gen(engine.grid_ptr(), engine.family().dim(), cfg.seed);
    auto u = gen.next();
    double alpha = cfg.alphas.front();
    double shift = engine.grid()[engine.grid().snap_index(0.05 * cfg.t_max)];
    auto tu = semigroup_apply(engine, shift, u);
    auto csv = open_out(cfg, "semigroup.csv");
    tu.write_csv(csv);

    double law = semigroup_law_residual(engine, alpha, shift, shift, u);
    double margin = growth_bound_margin(engine, alpha, shift, u);
    auto table = strong_continuity_probe(
        engine, alpha, u, {32 * cfg.h, 16 * cfg.h, 8 * cfg.h, 4 * cfg.h,
                           2 * cfg.h, cfg.h});
    auto out = open_out(cfg, "continuity.csv");
    out << "t,residual\n";
    for (auto [t, r] : table)
        out << format_full(t) << "," << format_full(r) << "\n";
    std::cout << "law_residual = " << format_full(law)
              << "\ngrowth_margin = " << format_full(margin) << "\n";
    double scale = std::max(1.0, engine.phi_profile(alpha, u).norm);
    double law_tol = (engine.family().has_log_form() ? 1e-12 : 1e-6) * scale;
    bool trend = table.back().second <= table.front().second;
    return (law <= law_tol && margin >= -1e-9 && trend) ? 0 : 1;
}

int cmd_resolvent(const AnalysisConfig& cfg) {
    auto engine = make_engine(cfg);
    double alpha = cfg.alphas.front();
    auto est = estimate_resolvent_norm(engine, alpha,
                                       BatteryConfig{cfg.n_bumps, cfg.seed});
    auto out = open_out(cfg, "resolvent.txt");
    write_resolvent_report(out, est);
    write_resolvent_report(std::cout, est);
    if (alpha < 0.0) {
        BumpGenerator gen(engine.grid_ptr(), engine.family().dim(), cfg.seed);
        for (std::size_t i = 0; i < cfg.n_bumps; ++i) {
            auto f = gen.next();
            double margin = resolvent_bound_margin(engine, alpha, f);
            if (margin < -1e-9 * engine.phi_profile(alpha, f).norm) return 1;
        }
    }
    return 0;
}

int cmd_certify(const AnalysisConfig& cfg) {
    auto engine = make_engine(cfg);
    double alpha = cfg.alphas.front();
    auto est = estimate_resolvent_norm(engine, alpha,
                                       BatteryConfig{cfg.n_bumps, cfg.seed});
    auto v = certify_stability(engine, alpha, est, cfg.delta, cfg.c_safety);
    auto sweep = certify_stability_sweep(engine, alpha, est, cfg.c_safety);
    auto out = open_out(cfg, "certify.txt");
    write_certify_report(out, v);
    out << "best_sweep_delta = " << format_full(sweep.delta) << "\n";
    out << "best_sweep_rate = " << format_full(sweep.rate) << "\n";
    write_certify_report(std::cout, v);
    return v.certified ? 0 : 1;
}

int cmd_quasineg(const AnalysisConfig& cfg) {
    auto engine = make_engine(cfg);
    auto rep = engine.quasi_negativity(cfg.alphas.front(), cfg.nu, cfg.n_dirs,
                                       cfg.seed);
    auto out = open_out(cfg, "quasineg.txt");
    write_equivalence_report(out, rep);
    write_equivalence_report(std::cout, rep);
    return 0;
}

int cmd_reproduce(const CliOptions& opt, const AnalysisConfig& cfg) {
    std::vector<std::string> names =
        opt.family.empty() ? catalog_names()
                           : std::vector<std::string>{opt.family};
    bool all = true;
    auto out = open_out(cfg, "reproduce.txt");
    for (const auto& name : names) {
        auto results = run_known_facts(name);
        write_fact_results(out, name, results);
        write_fact_results(std::cout, name, results);
        for (const auto& r : results) all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonuniform exponential behavior of evolution families"};
    app.require_subcommand(1);
    CliOptions opt;
    app.add_option("--config", opt.config_path, "config file");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--family", opt.family, "catalog family override");
    app.add_option("--alpha", opt.alphas, "exponent(s), repeatable");
    auto* seed_opt = app.add_option("--seed", opt.seed, "probe seed");

    std::string cmd;
    for (const char* name :
         {"exponents", "admissible", "phi", "weight", "semigroup", "resolvent",
          "certify", "quasineg", "reproduce-paper"}) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();  // global flags may follow the subcommand
        sub->callback([&cmd, name] { cmd = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    opt.seed_set = seed_opt->count() > 0;

    try {
        AnalysisConfig cfg = load_config(opt);
        if (cmd == "exponents") return cmd_exponents(cfg);
        if (cmd == "admissible") return cmd_admissible(cfg);
        if (cmd == "phi") return cmd_phi(cfg);
        if (cmd == "weight") return cmd_weight(cfg);
        if (cmd == "semigroup") return cmd_semigroup(cfg);
        if (cmd == "resolvent") return cmd_resolvent(cfg);
        if (cmd == "certify") return cmd_certify(cfg);
        if (cmd == "quasineg") return cmd_quasineg(cfg);
        if (cmd == "reproduce-paper") return cmd_reproduce(opt, cfg);
        std::cerr << "unknown command\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
