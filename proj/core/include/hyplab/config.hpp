#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hyplab {

/// Rejected configuration input (unknown key, bad value, unreadable file).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Everything the experiment drivers read. Parsed from an INI-style file
/// ([section] headers, key = value lines, '#' comments); unknown sections or
/// keys are rejected so typos cannot silently fall back to defaults.
struct ExperimentConfig {
    double mass{1.0};

    // [grid]
    double grid_spacing{0.5};
    double grid_cutoff{1.0};
    int n_max{2};
    int max_dim{5000};

    // [profiles]
    double f_radius{1.2};
    double chi_shell_halfwidth{0.2};
    double chi_plateau_halfwidth{0.1};
    double chi_angular_radius{1.9};
    double chi_angular_inner_radius{1.3};
    double h_tau1{0.5};
    double h_tau2{1.5};

    // [scan]
    double lambda_lo{30.0};
    double lambda_hi{300.0};
    int lambda_points{8};
    double cap_lambda_lo{50.0};
    double cap_lambda_hi{2400.0};
    int cap_lambda_points{4};
    int geom_samples{100000};
    int lemma_samples{500};

    // [tolerances]
    double slope_margin{0.3};
    double leading_coefficient_tol{1e-6};
    double vacuum_identity_tol{1e-10};
    double zero_entry_tol{1e-13};
    double product_residual_tol{1e-3};
    double cross_check_rel_tol{1e-8};
    double equality_tol{1e-12};
    double inequality_slack{1e-12};

    // [run]
    std::uint64_t seed{20260826};

    /// FNV-1a hash of the canonical serialization; embedded in every output.
    std::uint64_t hash() const;
    /// Deterministic round-trippable serialization (fixed key order).
    std::string canonicalText() const;
    /// Throws ConfigError on inconsistent values.
    void validate() const;
};

ExperimentConfig parseConfig(const std::string& text);
ExperimentConfig loadConfig(const std::string& path);  // empty file rejected

std::uint64_t fnv1a(const std::string& data);

}  // namespace hyplab
