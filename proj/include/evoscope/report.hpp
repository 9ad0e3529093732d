#pragma once

#include <iosfwd>

#include "evoscope/catalog.hpp"
#include "evoscope/exponents.hpp"
#include "evoscope/generator.hpp"

namespace evoscope {

/// `t,phi,norm_u`, 17 significant digits.
void write_phi_csv(std::ostream& out, const TimeGrid& grid,
                   const PhiProfile& profile, const GridFunction& u);

/// `s,W_alpha`.
void write_weight_csv(std::ostream& out, const TimeGrid& grid,
                      const WeightProfile& profile);

/// `alpha,admissible,strict`.
void write_exponents_csv(std::ostream& out, const ExponentReport& report);

void write_exponent_report(std::ostream& out, const ExponentReport& report);
void write_equivalence_report(std::ostream& out, const EquivalenceReport& rep);
void write_resolvent_report(std::ostream& out, const ResolventEstimate& est);
void write_certify_report(std::ostream& out, const StabilityVerdict& v);
void write_fact_results(std::ostream& out, const std::string& family,
                        const std::vector<FactResult>& results);

std::string format_full(double v);  // 17 significant digits

}  // namespace evoscope
