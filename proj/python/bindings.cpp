#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "evoscope/catalog.hpp"
#include "evoscope/exponents.hpp"
#include "evoscope/generator.hpp"
#include "evoscope/semigroup.hpp"
#include "evoscope/witness.hpp"

namespace py = pybind11;
using namespace evoscope;

namespace {

std::shared_ptr<TimeGrid> uniform_grid(double t_max, double h) {
    return std::make_shared<TimeGrid>(TimeGrid::uniform(t_max, h));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "nonuniform exponential behavior of evolution families";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<ParseError>(m, "ParseError");

    py::class_<EvolutionFamily>(m, "EvolutionFamily")
        .def_static("scalar_potential", &EvolutionFamily::scalar_potential,
                    py::arg("g"), py::arg("dim") = 1,
                    py::arg("name") = "scalar")
        .def_static("constant_decay", &EvolutionFamily::constant_decay,
                    py::arg("rate"), py::arg("dim") = 1)
        .def_static("matrix_ode", &EvolutionFamily::matrix_ode, py::arg("a"),
                    py::arg("dim"), py::arg("step"),
                    py::arg("name") = "matrix_ode")
        .def("rescale", &EvolutionFamily::rescale)
        .def_property_readonly("dim", &EvolutionFamily::dim)
        .def_property_readonly("name", &EvolutionFamily::name)
        .def("evaluate", &EvolutionFamily::evaluate, py::arg("t"), py::arg("s"))
        .def("norm", &EvolutionFamily::norm, py::arg("t"), py::arg("s"))
        .def("log_gain", &EvolutionFamily::log_gain, py::arg("t"), py::arg("s"))
        .def("cocycle_residual", &EvolutionFamily::cocycle_residual,
             py::arg("t"), py::arg("tau"), py::arg("s"));

    py::class_<TimeGrid, std::shared_ptr<TimeGrid>>(m, "TimeGrid")
        .def_property_readonly("points", &TimeGrid::points)
        .def_property_readonly("t_max", &TimeGrid::t_max)
        .def_property_readonly("step", &TimeGrid::step)
        .def("__len__", &TimeGrid::size)
        .def("node_index", &TimeGrid::node_index)
        .def("snap_index", &TimeGrid::snap_index);
    m.def("uniform_grid", &uniform_grid, py::arg("t_max"), py::arg("h"));

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init([](std::shared_ptr<const TimeGrid> g, Matrix v) {
                 return GridFunction(std::move(g), std::move(v));
             }),
             py::arg("grid"), py::arg("values"))
        .def_property_readonly("values", &GridFunction::values)
        .def_property_readonly("dim", &GridFunction::dim)
        .def("__len__", &GridFunction::size)
        .def("value", &GridFunction::value)
        .def("interp", &GridFunction::interp)
        .def("node_norm", &GridFunction::node_norm)
        .def("sup_norm", &GridFunction::sup_norm)
        .def("scaled", &GridFunction::scaled)
        .def("plus", &GridFunction::plus, py::arg("other"), py::arg("a") = 1.0);

    py::class_<BumpGenerator>(m, "BumpGenerator")
        .def(py::init([](std::shared_ptr<const TimeGrid> g, int dim,
                         std::uint64_t seed) {
                 return BumpGenerator(std::move(g), dim, seed);
             }),
             py::arg("grid"), py::arg("dim") = 1, py::arg("seed") = 0x5EED)
        .def("next", &BumpGenerator::next);

    py::class_<PhiProfile>(m, "PhiProfile")
        .def_readonly("alpha", &PhiProfile::alpha)
        .def_readonly("phi", &PhiProfile::phi)
        .def_readonly("norm", &PhiProfile::norm)
        .def_readonly("argmax_t", &PhiProfile::argmax_t);

    py::class_<WeightProfile>(m, "WeightProfile")
        .def_readonly("alpha", &WeightProfile::alpha)
        .def_readonly("w", &WeightProfile::w)
        .def_readonly("log_w", &WeightProfile::log_w);

    py::class_<Membership>(m, "Membership")
        .def_readonly("member", &Membership::member)
        .def_readonly("norm", &Membership::norm)
        .def_readonly("phi_at_zero", &Membership::phi_at_zero)
        .def_readonly("tail_sup", &Membership::tail_sup);

    py::class_<EquivalenceReport>(m, "EquivalenceReport")
        .def_readonly("alpha", &EquivalenceReport::alpha)
        .def_readonly("nu", &EquivalenceReport::nu)
        .def_readonly("k_measured", &EquivalenceReport::k_measured)
        .def_readonly("equivalent", &EquivalenceReport::equivalent)
        .def_readonly("window_growth", &EquivalenceReport::window_growth);

    py::class_<SupSampler>(m, "SupSampler")
        .def_static("linear",
                    [](const std::shared_ptr<const TimeGrid>& g) {
                        return SupSampler::linear(*g);
                    })
        .def_static("log_augmented",
                    [](const std::shared_ptr<const TimeGrid>& g, double t_sup,
                       std::size_t n_log) {
                        return SupSampler::log_augmented(*g, t_sup, n_log);
                    },
                    py::arg("grid"), py::arg("t_sup"), py::arg("n_log"))
        .def_readonly("times", &SupSampler::times);

    py::class_<NormEngine>(m, "NormEngine")
        .def(py::init([](const EvolutionFamily& fam,
                         std::shared_ptr<const TimeGrid> g,
                         const SupSampler& s) {
                 return NormEngine(fam, std::move(g), s);
             }),
             py::arg("family"), py::arg("grid"), py::arg("sampler"))
        .def("phi", &NormEngine::phi, py::arg("alpha"), py::arg("node"),
             py::arg("u"))
        .def("phi_profile", &NormEngine::phi_profile, py::arg("alpha"),
             py::arg("u"))
        .def("weight_profile", &NormEngine::weight_profile, py::arg("alpha"))
        .def("sandwich_violation", &NormEngine::sandwich_violation)
        .def("monotonicity_violation", &NormEngine::monotonicity_violation)
        .def("membership", &NormEngine::membership)
        .def("quasi_negativity", &NormEngine::quasi_negativity,
             py::arg("alpha"), py::arg("nu"), py::arg("n_dirs") = 8,
             py::arg("seed") = 0x5EED);

    py::class_<BohlResult>(m, "BohlResult")
        .def_readonly("value", &BohlResult::value)
        .def_readonly("divergent", &BohlResult::divergent);

    py::class_<AdmissibilityResult>(m, "AdmissibilityResult")
        .def_readonly("admissible", &AdmissibilityResult::admissible)
        .def_readonly("growth", &AdmissibilityResult::growth)
        .def_readonly("evidence_t", &AdmissibilityResult::evidence_t)
        .def_readonly("evidence_s", &AdmissibilityResult::evidence_s);

    py::class_<AlphaVerdict>(m, "AlphaVerdict")
        .def_readonly("alpha", &AlphaVerdict::alpha)
        .def_readonly("admissible", &AlphaVerdict::admissible)
        .def_readonly("strict", &AlphaVerdict::strict);

    py::class_<ExponentReport>(m, "ExponentReport")
        .def_readonly("k_l", &ExponentReport::k_l)
        .def_readonly("k_b", &ExponentReport::k_b)
        .def_readonly("inf_a", &ExponentReport::inf_a)
        .def_readonly("tested", &ExponentReport::tested)
        .def_readonly("classification", &ExponentReport::classification);

    m.def("lyapunov_exponent", &lyapunov_exponent);
    m.def(
        "bohl_exponent",
        [](const NormEngine& e, double gap) { return bohl_exponent(e, gap); },
        py::arg("engine"), py::arg("t_gap"));
    m.def(
        "is_admissible",
        [](const NormEngine& e, double a) { return is_admissible(e, a); },
        py::arg("engine"), py::arg("alpha"));
    m.def(
        "is_strict",
        [](const NormEngine& e, double a) { return is_strict(e, a); },
        py::arg("engine"), py::arg("alpha"));
    m.def(
        "inf_admissible",
        [](const NormEngine& e, double lo, double hi, double tol) {
            return inf_admissible(e, lo, hi, tol);
        },
        py::arg("engine"), py::arg("alpha_lo"), py::arg("alpha_hi"),
        py::arg("tol") = 0.02);
    m.def(
        "classify",
        [](const NormEngine& e, const std::vector<double>& alphas) {
            return classify(e, alphas);
        },
        py::arg("engine"), py::arg("alphas"));

    m.def("semigroup_apply", &semigroup_apply, py::arg("engine"),
          py::arg("shift"), py::arg("u"));
    m.def("semigroup_law_residual", &semigroup_law_residual);
    m.def("growth_bound_margin", &growth_bound_margin);
    m.def("strong_continuity_probe", &strong_continuity_probe);
    m.def("rescaling_invariance_deviation", &rescaling_invariance_deviation);

    py::class_<ResolventEstimate>(m, "ResolventEstimate")
        .def_readonly("alpha", &ResolventEstimate::alpha)
        .def_readonly("c", &ResolventEstimate::c)
        .def_readonly("witness_f", &ResolventEstimate::witness_f)
        .def_readonly("n_tests", &ResolventEstimate::n_tests)
        .def_readonly("unbounded", &ResolventEstimate::unbounded);

    py::class_<StabilityVerdict>(m, "StabilityVerdict")
        .def_readonly("alpha", &StabilityVerdict::alpha)
        .def_readonly("c", &StabilityVerdict::c)
        .def_readonly("delta", &StabilityVerdict::delta)
        .def_readonly("rate", &StabilityVerdict::rate)
        .def_readonly("prefactor", &StabilityVerdict::prefactor)
        .def_readonly("certified", &StabilityVerdict::certified)
        .def_readonly("reason", &StabilityVerdict::reason)
        .def_readonly("measured_margin", &StabilityVerdict::measured_margin);

    m.def("apply_inverse", &apply_inverse, py::arg("family"), py::arg("f"));
    m.def("resolvent_bound_margin", &resolvent_bound_margin);
    m.def(
        "estimate_resolvent_norm",
        [](const NormEngine& e, double alpha, std::size_t n_bumps,
           std::uint64_t seed) {
            return estimate_resolvent_norm(e, alpha,
                                           BatteryConfig{n_bumps, seed});
        },
        py::arg("engine"), py::arg("alpha"), py::arg("n_bumps") = 20,
        py::arg("seed") = 0x5EED);
    m.def(
        "certify_stability",
        [](const NormEngine& e, double alpha, const ResolventEstimate& est,
           double delta, double c_safety) {
            return certify_stability(e, alpha, est, delta, c_safety);
        },
        py::arg("engine"), py::arg("alpha"), py::arg("resolvent"),
        py::arg("delta"), py::arg("c_safety") = 1.05);

    py::class_<FactResult>(m, "FactResult")
        .def_readonly("id", &FactResult::id)
        .def_readonly("expected", &FactResult::expected)
        .def_readonly("measured", &FactResult::measured)
        .def_readonly("tol", &FactResult::tol)
        .def_readonly("passed", &FactResult::pass)
        .def_readonly("note", &FactResult::note);

    py::class_<FamilySpec>(m, "FamilySpec")
        .def_readonly("kind", &FamilySpec::kind)
        .def_readonly("rate", &FamilySpec::rate)
        .def_readonly("shift", &FamilySpec::shift)
        .def_readonly("dim", &FamilySpec::dim)
        .def_readonly("inner", &FamilySpec::inner);

    py::class_<AnalysisConfig>(m, "AnalysisConfig")
        .def_readonly("family", &AnalysisConfig::family)
        .def_readonly("t_max", &AnalysisConfig::t_max)
        .def_readonly("h", &AnalysisConfig::h)
        .def_readonly("t_sup", &AnalysisConfig::t_sup)
        .def_readonly("sup_mode", &AnalysisConfig::sup_mode)
        .def_readonly("alphas", &AnalysisConfig::alphas)
        .def_readonly("seed", &AnalysisConfig::seed)
        .def_readonly("delta", &AnalysisConfig::delta)
        .def_readonly("nu", &AnalysisConfig::nu);

    m.def("catalog_names", &catalog_names);
    m.def("run_known_facts", &run_known_facts, py::arg("name"));
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("make_engine",
          [](const std::string& text) { return make_engine(parse_config(text)); },
          py::arg("config_text"));
}
