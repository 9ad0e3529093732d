#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evoscope/linalg.hpp"

namespace evoscope {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FamilySpec {
    std::string kind = "scalar_example1";
    double rate = 1.0;   // constant_decay
    double shift = 0.0;  // rescaled
    int dim = 1;
    std::string inner;          // rescaled: kind of the wrapped family
    std::string ode_matrix = "rotation";  // matrix_ode built-in
};

struct AnalysisConfig {
    FamilySpec family;
    double t_max = 200.0;
    double h = 0.01;
    double t_sup = 0.0;  // 0 means t_max
    std::string sup_mode = "linear";  // or "log_augmented"
    std::size_t n_log = 2000;
    std::vector<double> alphas;
    double bracket_lo = -2.0;
    double bracket_hi = 0.0;
    double bisect_tol = 0.02;
    std::size_t n_dirs = 8;
    std::size_t n_bumps = 20;
    std::uint64_t seed = 0x5EED;
    double theta = 1e12;  // blow-up cap
    double blowup_log_margin = 1.0;
    double tol_growth = 0.05;
    double tol_tail = 1e-3;
    double tol_zero = 1e-9;
    double c_safety = 1.05;
    double delta = 0.5;
    double nu = 1.0;  // quasi-negativity partner exponent
    std::string out_dir = "out";

    void validate() const;
};

/// Flat dotted-key format: one `key = value` per line, `#` starts a comment.
/// Unknown keys and malformed lines are rejected with their line number.
/// Keys not present fall back to the catalog's recommended settings for the
/// selected family.
AnalysisConfig parse_config(const std::string& text);

/// Raw key/value pass, shared with CLI overrides.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Recommended defaults for the named catalog family, with overrides applied.
AnalysisConfig config_from_map(const std::map<std::string, std::string>& kv);

}  // namespace evoscope
