#include "evoscope/config.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace evoscope {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ParseError("invalid number for '" + key + "': " + v);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        std::uint64_t u = std::stoull(v, &pos, 0);
        if (pos != v.size()) throw std::invalid_argument(v);
        return u;
    } catch (const std::exception&) {
        throw ParseError("invalid integer for '" + key + "': " + v);
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

AnalysisConfig recommended_config(const std::string& kind,
                                  const std::string& inner) {
    if (kind == "rescaled") {
        auto cfg = recommended_config(inner.empty() ? "constant_decay" : inner, "");
        cfg.family.inner = cfg.family.kind;
        cfg.family.kind = "rescaled";
        return cfg;
    }
    AnalysisConfig cfg;
    cfg.family.kind = kind;
    if (kind == "scalar_example1") {
        cfg.t_max = 200.0;
        cfg.alphas = {-1.0, 0.0, 5.0};
        cfg.bracket_lo = -2.0;
        cfg.bracket_hi = 0.0;
        cfg.nu = 1.0;
    } else if (kind == "scalar_example2") {
        cfg.t_max = 1e4;
        cfg.sup_mode = "log_augmented";
        cfg.t_sup = 1e5;
        cfg.n_log = 2000;
        cfg.alphas = {-0.2, 0.0, 1.0};
        cfg.bracket_lo = -1.0;
        cfg.bracket_hi = 0.0;
        cfg.nu = 0.2;
    } else if (kind == "constant_decay") {
        cfg.t_max = 100.0;
        cfg.alphas = {-1.0, -0.5, 0.0};
        cfg.bracket_lo = -3.0;
        cfg.bracket_hi = 0.0;
    } else if (kind == "matrix_ode") {
        cfg.family.dim = 2;
        cfg.t_max = 20.0;
        cfg.alphas = {-0.2, 0.0, 0.5};
        cfg.bracket_lo = -0.5;
        cfg.bracket_hi = 0.5;
    } else {
        throw ParseError("unknown family kind: " + kind);
    }
    return cfg;
}

}  // namespace

void AnalysisConfig::validate() const {
    if (!(h > 0.0)) throw ParseError("h must be positive");
    if (!(t_max >= 10.0 * h)) throw ParseError("t_max must be at least 10*h");
    if (!(delta > 0.0 && delta < 1.0)) throw ParseError("delta must be in (0,1)");
    if (sup_mode != "linear" && sup_mode != "log_augmented")
        throw ParseError("sup_mode must be linear or log_augmented");
    if (sup_mode == "log_augmented" && !(t_sup > t_max))
        throw ParseError("log_augmented sampling needs t_sup > t_max");
    if (family.dim < 1) throw ParseError("family.dim must be >= 1");
    if (family.rate < 0.0) throw ParseError("family.rate must be >= 0");
    if (!(bisect_tol > 0.0)) throw ParseError("bisect_tol must be positive");
    if (!(nu > 0.0)) throw ParseError("nu must be positive");
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("line " + std::to_string(line_no) +
                             ": empty key or value");
        kv[key] = value;
    }
    return kv;
}

AnalysisConfig config_from_map(const std::map<std::string, std::string>& kv) {
    std::string kind = "scalar_example1";
    std::string inner;
    if (auto it = kv.find("family.kind"); it != kv.end()) kind = it->second;
    if (auto it = kv.find("family.inner"); it != kv.end()) inner = it->second;
    AnalysisConfig cfg = recommended_config(kind, inner);

    for (const auto& [key, value] : kv) {
        if (key == "family.kind") {
            cfg.family.kind = value;
        } else if (key == "family.rate") {
            cfg.family.rate = parse_double(key, value);
        } else if (key == "family.shift") {
            cfg.family.shift = parse_double(key, value);
        } else if (key == "family.dim") {
            cfg.family.dim = static_cast<int>(parse_u64(key, value));
        } else if (key == "family.inner") {
            cfg.family.inner = value;
        } else if (key == "family.ode_matrix") {
            cfg.family.ode_matrix = value;
        } else if (key == "t_max") {
            cfg.t_max = parse_double(key, value);
        } else if (key == "h") {
            cfg.h = parse_double(key, value);
        } else if (key == "t_sup") {
            cfg.t_sup = parse_double(key, value);
        } else if (key == "sup_mode") {
            cfg.sup_mode = value;
        } else if (key == "n_log") {
            cfg.n_log = parse_u64(key, value);
        } else if (key == "alphas") {
            cfg.alphas = parse_list(key, value);
        } else if (key == "bracket_lo") {
            cfg.bracket_lo = parse_double(key, value);
        } else if (key == "bracket_hi") {
            cfg.bracket_hi = parse_double(key, value);
        } else if (key == "bisect_tol") {
            cfg.bisect_tol = parse_double(key, value);
        } else if (key == "n_dirs") {
            cfg.n_dirs = parse_u64(key, value);
        } else if (key == "n_bumps") {
            cfg.n_bumps = parse_u64(key, value);
        } else if (key == "seed") {
            cfg.seed = parse_u64(key, value);
        } else if (key == "theta") {
            cfg.theta = parse_double(key, value);
        } else if (key == "blowup_log_margin") {
            cfg.blowup_log_margin = parse_double(key, value);
        } else if (key == "tol_growth") {
            cfg.tol_growth = parse_double(key, value);
        } else if (key == "tol_tail") {
            cfg.tol_tail = parse_double(key, value);
        } else if (key == "tol_zero") {
            cfg.tol_zero = parse_double(key, value);
        } else if (key == "c_safety") {
            cfg.c_safety = parse_double(key, value);
        } else if (key == "delta") {
            cfg.delta = parse_double(key, value);
        } else if (key == "nu") {
            cfg.nu = parse_double(key, value);
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else {
            throw ParseError("unknown key: " + key);
        }
    }
    if (cfg.t_sup <= 0.0) cfg.t_sup = cfg.t_max;
    cfg.validate();
    return cfg;
}

AnalysisConfig parse_config(const std::string& text) {
    return config_from_map(parse_key_values(text));
}

}  // namespace evoscope
