#pragma once

#include <functional>

#include "evoscope/config.hpp"
#include "evoscope/norms.hpp"

namespace evoscope {

struct FactResult {
    std::string id;
    double expected = 0.0;
    double measured = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string note;
};

struct KnownFact {
    std::string id;
    std::string anchor;  // which analytic claim this checks
    std::function<FactResult(const NormEngine&, const AnalysisConfig&)> check;
};

struct CatalogEntry {
    std::string name;
    std::string describe;
    AnalysisConfig recommended;
    std::vector<KnownFact> facts;
};

std::vector<std::string> catalog_names();
const CatalogEntry& catalog_entry(const std::string& name);

EvolutionFamily build_family(const AnalysisConfig& cfg);

/// Engine over the configured grid and sup sampler.
NormEngine make_engine(const AnalysisConfig& cfg);

/// Run every known fact of the named entry under its recommended settings.
std::vector<FactResult> run_known_facts(const std::string& name);

}  // namespace evoscope
