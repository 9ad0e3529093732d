#include "evoscope/report.hpp"

#include <cstdio>
#include <ostream>

namespace evoscope {

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_phi_csv(std::ostream& out, const TimeGrid& grid,
                   const PhiProfile& profile, const GridFunction& u) {
    out << "t,phi,norm_u\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << format_full(grid[i]) << "," << format_full(profile.phi[i]) << ","
            << format_full(u.node_norm(i)) << "\n";
}

void write_weight_csv(std::ostream& out, const TimeGrid& grid,
                      const WeightProfile& profile) {
    out << "s,W_alpha\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << format_full(grid[i]) << "," << format_full(profile.w[i]) << "\n";
}

void write_exponents_csv(std::ostream& out, const ExponentReport& report) {
    out << "alpha,admissible,strict\n";
    for (const auto& v : report.tested)
        out << format_full(v.alpha) << "," << (v.admissible ? 1 : 0) << ","
            << (v.strict ? 1 : 0) << "\n";
}

void write_exponent_report(std::ostream& out, const ExponentReport& report) {
    out << "k_l = " << format_full(report.k_l) << "\n";
    if (report.k_b.divergent)
        out << "k_b = +inf\n";
    else
        out << "k_b = " << format_full(report.k_b.value) << "\n";
    out << "inf_a = " << format_full(report.inf_a) << "\n";
    out << "classification = " << report.classification << "\n";
}

void write_equivalence_report(std::ostream& out, const EquivalenceReport& rep) {
    out << "alpha = " << format_full(rep.alpha) << "\n";
    out << "nu = " << format_full(rep.nu) << "\n";
    out << "k_measured = " << format_full(rep.k_measured) << "\n";
    out << "verdict = " << (rep.equivalent ? "equivalent" : "diverging") << "\n";
    out << "window_growth = " << format_full(rep.window_growth) << "\n";
    out << "probes = " << rep.probes << "\n";
}

void write_resolvent_report(std::ostream& out, const ResolventEstimate& est) {
    out << "alpha = " << format_full(est.alpha) << "\n";
    out << "c = " << format_full(est.c) << "\n";
    out << "n_tests = " << est.n_tests << "\n";
    out << "witness = " << est.witness_f << "\n";
    out << "flag = " << (est.unbounded ? "inverse_unbounded" : "bounded") << "\n";
    out << "trend = " << format_full(est.trend[0]) << ","
        << format_full(est.trend[1]) << "," << format_full(est.trend[2]) << "\n";
}

void write_certify_report(std::ostream& out, const StabilityVerdict& v) {
    out << "alpha = " << format_full(v.alpha) << "\n";
    out << "c = " << format_full(v.c) << "\n";
    out << "delta = " << format_full(v.delta) << "\n";
    out << "rate = " << format_full(v.rate) << "\n";
    out << "prefactor = " << format_full(v.prefactor) << "\n";
    out << "margin = " << format_full(v.measured_margin) << "\n";
    out << "step1 = " << (v.step1_ok ? "ok" : "fail") << "\n";
    out << "step2 = " << (v.step2_ok ? "ok" : "fail") << "\n";
    out << "verdict = "
        << (v.certified ? "certified_stable"
                        : "not_certified(" + v.reason + ")")
        << "\n";
}

void write_fact_results(std::ostream& out, const std::string& family,
                        const std::vector<FactResult>& results) {
    for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << family << "/" << r.id
            << " expected=" << format_full(r.expected)
            << " measured=" << format_full(r.measured);
        if (!r.note.empty()) out << "  (" << r.note << ")";
        out << "\n";
    }
}

}  // namespace evoscope
