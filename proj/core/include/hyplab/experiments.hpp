#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyplab/config.hpp"

namespace hyplab {

/// One checked claim: `measured relation threshold` decides pass.
struct VerdictRecord {
    std::string id;
    std::string statement;  // registry text for the claim
    double measured{0.0};
    double threshold{0.0};
    std::string relation;  // "<=" or ">="
    bool pass{false};
    double runtime_s{0.0};
};

/// Claim id -> human-readable statement; every verdict id must appear here.
const std::vector<std::pair<std::string, std::string>>& claimRegistry();
const std::string& claimStatement(const std::string& id);

struct ExperimentContext {
    ExperimentConfig cfg;
    std::string out_dir{"out"};
    int jobs{1};
};

/// Subcommand names in canonical execution order (excluding "all").
const std::vector<std::string>& subcommandNames();

/// Runs one named experiment; writes its CSV artifacts into ctx.out_dir and
/// returns the verdicts. Throws std::invalid_argument for unknown names and
/// std::runtime_error (or derived) on numerical failure.
std::vector<VerdictRecord> runSubcommand(const std::string& name, const ExperimentContext& ctx);

/// Serializes verdicts as JSON with stable key order and the config hash.
void writeVerdicts(const std::string& path, const ExperimentConfig& cfg,
                   const std::vector<VerdictRecord>& verdicts);

}  // namespace hyplab
