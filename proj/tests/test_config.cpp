#include <string>

#include "doctest.h"
#include "hyplab/config.hpp"

using namespace hyplab;

TEST_CASE("defaults validate and hash deterministically") {
    const ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.hash() == ExperimentConfig{}.hash());
}

TEST_CASE("parse round-trip: canonical text is a fixed point") {
    ExperimentConfig cfg;
    cfg.mass = 1.25;
    cfg.lambda_points = 5;
    cfg.seed = 42;
    cfg.chi_shell_halfwidth = 0.15;
    const ExperimentConfig reparsed = parseConfig(cfg.canonicalText());
    CHECK(reparsed.hash() == cfg.hash());
    CHECK(reparsed.canonicalText() == cfg.canonicalText());
    CHECK(reparsed.mass == 1.25);
    CHECK(reparsed.lambda_points == 5);
    CHECK(reparsed.seed == 42);
}

TEST_CASE("parser accepts comments and partial sections") {
    const std::string text =
        "# comment line\n"
        "[scan]\n"
        "lambda_points = 12   # trailing comment\n"
        "\n"
        "[run]\n"
        "seed = 7\n";
    const ExperimentConfig cfg = parseConfig(text);
    CHECK(cfg.lambda_points == 12);
    CHECK(cfg.seed == 7);
    CHECK(cfg.mass == 1.0);  // untouched defaults survive
}

TEST_CASE("parser rejects unknown keys, unknown sections, and empty input") {
    CHECK_THROWS_AS(parseConfig("[scan]\nlambda_pints = 12\n"), ConfigError);
    CHECK_THROWS_AS(parseConfig("[scam]\nlambda_points = 12\n"), ConfigError);
    CHECK_THROWS_AS(parseConfig("lambda_points = 12\n"), ConfigError);  // key before section
    CHECK_THROWS_AS(parseConfig(""), ConfigError);
    CHECK_THROWS_AS(parseConfig("# only comments\n\n"), ConfigError);
    CHECK_THROWS_AS(parseConfig("[scan]\nlambda_points\n"), ConfigError);

    // the diagnostic carries the offending line number
    try {
        parseConfig("[scan]\n\nlambda_pints = 12\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("validation rejects inconsistent settings") {
    ExperimentConfig cfg;
    cfg.mass = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = ExperimentConfig{};
    cfg.lambda_lo = 300.0;
    cfg.lambda_hi = 30.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = ExperimentConfig{};
    cfg.chi_shell_halfwidth = 2.0;  // shell support would touch the light cone
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = ExperimentConfig{};
    cfg.lambda_points = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("hash responds to every field change") {
    const ExperimentConfig base;
    ExperimentConfig cfg = base;
    cfg.seed = base.seed + 1;
    CHECK(cfg.hash() != base.hash());

    cfg = base;
    cfg.grid_spacing = 0.25;
    CHECK(cfg.hash() != base.hash());

    cfg = base;
    cfg.zero_entry_tol *= 10.0;
    CHECK(cfg.hash() != base.hash());
}
