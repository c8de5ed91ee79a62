// Command line front end: `hyplab run <subcommand>` executes experiments and
// writes CSV artifacts plus a JSON verdict summary; `hyplab report` renders
// verdict files as a table. Exit codes: 0 all pass, 1 failed claim, 2 usage or
// configuration error, 3 numerical failure.
#include <cstdio>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyplab/config.hpp"
#include "hyplab/experiments.hpp"
#include "json.hpp"

namespace {

using hyplab::ExperimentConfig;
using hyplab::VerdictRecord;

std::vector<std::string> splitClaims(const std::string& claims) {
    std::vector<std::string> out;
    std::istringstream in(claims);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int runCommand(const std::string& what, const std::string& config_path,
               const std::string& out_dir, const std::string& claims, int jobs,
               long long seed_override) {
    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = hyplab::loadConfig(config_path);
        if (seed_override >= 0) cfg.seed = (std::uint64_t)seed_override;
        cfg.validate();
    } catch (const hyplab::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    std::vector<std::string> names;
    if (what == "all")
        names = hyplab::subcommandNames();
    else
        names = {what};

    const std::vector<std::string> wanted = splitClaims(claims);
    hyplab::ExperimentContext ctx{cfg, out_dir, jobs};
    std::vector<VerdictRecord> verdicts;
    for (const std::string& name : names) {
        std::printf("[%s] running\n", name.c_str());
        std::fflush(stdout);
        std::vector<VerdictRecord> batch;
        try {
            batch = hyplab::runSubcommand(name, ctx);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "numerical failure in %s: %s\n", name.c_str(), e.what());
            return 3;
        }
        for (const VerdictRecord& v : batch) {
            if (!wanted.empty() &&
                std::find(wanted.begin(), wanted.end(), v.id) == wanted.end())
                continue;
            verdicts.push_back(v);
            std::printf("  %-28s %s  measured %.6g %s %.6g  (%.1fs)\n", v.id.c_str(),
                        v.pass ? "PASS" : "FAIL", v.measured, v.relation.c_str(), v.threshold,
                        v.runtime_s);
        }
    }
    hyplab::writeVerdicts(out_dir + "/verdicts.json", cfg, verdicts);
    for (const VerdictRecord& v : verdicts)
        if (!v.pass) return 1;
    return 0;
}

int reportCommand(const std::vector<std::string>& paths) {
    std::string hash;
    std::vector<nlohmann::json> all;
    for (const std::string& path : paths) {
        std::ifstream in(path);
        if (!in) {
            std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
            return 2;
        }
        nlohmann::json doc;
        try {
            in >> doc;
            const std::string h = doc.at("config_hash").get<std::string>();
            if (hash.empty())
                hash = h;
            else if (h != hash) {
                std::fprintf(stderr, "error: verdicts come from different configs (%s vs %s)\n",
                             hash.c_str(), h.c_str());
                return 2;
            }
            for (const auto& v : doc.at("verdicts")) all.push_back(v);
        } catch (const nlohmann::json::exception& e) {
            std::fprintf(stderr, "error: corrupt verdicts file %s: %s\n", path.c_str(), e.what());
            return 2;
        }
    }
    std::printf("config %s\n", hash.c_str());
    std::printf("%-28s %-6s %14s %3s %14s  %s\n", "claim", "result", "measured", "", "threshold",
                "statement");
    bool failed = false;
    try {
        for (const auto& v : all) {
            const bool pass = v.at("pass").get<bool>();
            failed = failed || !pass;
            std::printf("%-28s %-6s %14.6g %3s %14.6g  %s\n",
                        v.at("id").get<std::string>().c_str(), pass ? "PASS" : "FAIL",
                        v.at("measured").get<double>(), v.at("relation").get<std::string>().c_str(),
                        v.at("threshold").get<double>(),
                        v.at("statement").get<std::string>().c_str());
        }
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: corrupt verdicts entry: %s\n", e.what());
        return 2;
    }
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperboloid-field asymptotics laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", claims;
    int jobs = 1;
    long long seed = -1;

    CLI::App* run = app.add_subcommand("run", "execute experiments");
    std::string what;
    run->add_option("subcommand", what, "expand|rates|outfield|decay|cluster|geom|lemma|all")
        ->required()
        ->check(CLI::IsMember({"expand", "rates", "outfield", "decay", "cluster", "geom", "lemma",
                               "all"}));
    run->add_option("--config", config_path, "configuration file (defaults used when absent)");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--claims", claims, "comma-separated claim id subset");
    run->add_option("--jobs", jobs, "worker threads for scans")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "override the configured random seed");

    CLI::App* report = app.add_subcommand("report", "render verdict files");
    std::vector<std::string> paths;
    report->add_option("paths", paths, "verdicts.json files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; genuine usage errors exit 2
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (run->parsed()) return runCommand(what, config_path, out_dir, claims, jobs, seed);
    return reportCommand(paths);
}
