#include "hyplab/config.hpp"

#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace hyplab {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Field {
    std::string section;
    std::string key;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

double parseDouble(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': not a number: '" + v + "'");
    }
}

long long parseInt(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': not an integer: '" + v + "'");
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const std::vector<Field>& schema() {
    auto dbl = [](const std::string& sec, const std::string& key,
                  double ExperimentConfig::*mem) {
        return Field{sec, key,
                     [key, mem](ExperimentConfig& c, const std::string& v) {
                         c.*mem = parseDouble(key, v);
                     },
                     [mem](const ExperimentConfig& c) { return fmt(c.*mem); }};
    };
    auto itg = [](const std::string& sec, const std::string& key, int ExperimentConfig::*mem) {
        return Field{sec, key,
                     [key, mem](ExperimentConfig& c, const std::string& v) {
                         c.*mem = (int)parseInt(key, v);
                     },
                     [mem](const ExperimentConfig& c) { return std::to_string(c.*mem); }};
    };
    static const std::vector<Field> fields = {
        dbl("", "mass", &ExperimentConfig::mass),
        dbl("grid", "spacing", &ExperimentConfig::grid_spacing),
        dbl("grid", "cutoff", &ExperimentConfig::grid_cutoff),
        itg("grid", "n_max", &ExperimentConfig::n_max),
        itg("grid", "max_dim", &ExperimentConfig::max_dim),
        dbl("profiles", "f_radius", &ExperimentConfig::f_radius),
        dbl("profiles", "chi_shell_halfwidth", &ExperimentConfig::chi_shell_halfwidth),
        dbl("profiles", "chi_plateau_halfwidth", &ExperimentConfig::chi_plateau_halfwidth),
        dbl("profiles", "chi_angular_radius", &ExperimentConfig::chi_angular_radius),
        dbl("profiles", "chi_angular_inner_radius", &ExperimentConfig::chi_angular_inner_radius),
        dbl("profiles", "h_tau1", &ExperimentConfig::h_tau1),
        dbl("profiles", "h_tau2", &ExperimentConfig::h_tau2),
        dbl("scan", "lambda_lo", &ExperimentConfig::lambda_lo),
        dbl("scan", "lambda_hi", &ExperimentConfig::lambda_hi),
        itg("scan", "lambda_points", &ExperimentConfig::lambda_points),
        dbl("scan", "cap_lambda_lo", &ExperimentConfig::cap_lambda_lo),
        dbl("scan", "cap_lambda_hi", &ExperimentConfig::cap_lambda_hi),
        itg("scan", "cap_lambda_points", &ExperimentConfig::cap_lambda_points),
        itg("scan", "geom_samples", &ExperimentConfig::geom_samples),
        itg("scan", "lemma_samples", &ExperimentConfig::lemma_samples),
        dbl("tolerances", "slope_margin", &ExperimentConfig::slope_margin),
        dbl("tolerances", "leading_coefficient_tol", &ExperimentConfig::leading_coefficient_tol),
        dbl("tolerances", "vacuum_identity_tol", &ExperimentConfig::vacuum_identity_tol),
        dbl("tolerances", "zero_entry_tol", &ExperimentConfig::zero_entry_tol),
        dbl("tolerances", "product_residual_tol", &ExperimentConfig::product_residual_tol),
        dbl("tolerances", "cross_check_rel_tol", &ExperimentConfig::cross_check_rel_tol),
        dbl("tolerances", "equality_tol", &ExperimentConfig::equality_tol),
        dbl("tolerances", "inequality_slack", &ExperimentConfig::inequality_slack),
        Field{"run", "seed",
              [](ExperimentConfig& c, const std::string& v) {
                  c.seed = (std::uint64_t)parseInt("seed", v);
              },
              [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
    };
    return fields;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!(mass > 0.0)) throw ConfigError("config: mass must be positive");
    if (!(grid_spacing > 0.0) || !(grid_cutoff >= grid_spacing))
        throw ConfigError("config: grid spacing/cutoff inconsistent");
    if (n_max < 1 || max_dim < 2) throw ConfigError("config: grid.n_max/max_dim out of range");
    if (!(chi_shell_halfwidth < mass))
        throw ConfigError("config: shell halfwidth reaches the light cone");
    if (!(chi_plateau_halfwidth < chi_shell_halfwidth))
        throw ConfigError("config: plateau halfwidth must sit inside the shell halfwidth");
    if (!(chi_angular_inner_radius < chi_angular_radius))
        throw ConfigError("config: angular inner radius must sit inside the outer radius");
    if (!(f_radius > 0.0) || !(f_radius < chi_angular_inner_radius))
        throw ConfigError("config: f_radius must fit inside the angular plateau");
    if (!(0.0 < h_tau1 && h_tau1 < h_tau2))
        throw ConfigError("config: time kernel needs 0 < h_tau1 < h_tau2");
    if (!(lambda_lo > 0.0) || !(lambda_hi > lambda_lo) || lambda_points < 3)
        throw ConfigError("config: lambda grid inconsistent");
    if (!(cap_lambda_lo > 0.0) || !(cap_lambda_hi > cap_lambda_lo) || cap_lambda_points < 2)
        throw ConfigError("config: cap lambda grid inconsistent");
    if (geom_samples < 1 || lemma_samples < 1)
        throw ConfigError("config: sample counts must be positive");
}

std::string ExperimentConfig::canonicalText() const {
    std::ostringstream out;
    std::string current;
    for (const auto& f : schema()) {
        if (f.section != current) {
            current = f.section;
            out << "[" << current << "]\n";
        }
        out << f.key << " = " << f.get(*this) << "\n";
    }
    return out.str();
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a(canonicalText()); }

ExperimentConfig parseConfig(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    int assignments = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hashpos = line.find('#');
        if (hashpos != std::string::npos) line.erase(hashpos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config:" + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (const auto& f : schema()) known = known || f.section == section;
            if (!known)
                throw ConfigError("config:" + std::to_string(lineno) + ": unknown section '" +
                                  section + "'");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config:" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const Field* match = nullptr;
        for (const auto& f : schema())
            if (f.section == section && f.key == key) match = &f;
        if (!match)
            throw ConfigError("config:" + std::to_string(lineno) + ": unknown key '" + key +
                              "' in section '" + section + "'");
        match->set(cfg, value);
        ++assignments;
    }
    if (assignments == 0) throw ConfigError("config: no settings found");
    cfg.validate();
    return cfg;
}

ExperimentConfig loadConfig(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseConfig(buf.str());
}

}  // namespace hyplab
