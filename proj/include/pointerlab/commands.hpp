#pragma once

#include <optional>
#include <string>

#include "pointerlab/config.hpp"

// Subcommand bodies behind the CLI. Each returns the artifact text (CSV or JSON);
// the caller decides where it goes.
namespace pointerlab::commands {

struct Options {
    std::optional<std::uint64_t> seed;  // overrides the apparatus / oracle seed
    unsigned threads = 1;
};

/// Applies --seed: replaces the disordered ensemble seed and the oracle suite seed.
void apply_overrides(RunConfig& cfg, const Options& opts);

/// CSV "t,availability", one row per point of the configured grid.
std::string simulate(const RunConfig& cfg);

/// JSON with the WPRC set, PRC points, revivals and the longest window.
std::string windows(const RunConfig& cfg, const Options& opts);

/// JSON with reliability, accessibility, diagram placement, comparisons and,
/// when configured, the order/disorder report.
std::string classify(const RunConfig& cfg, const Options& opts);

struct OracleCheckResult {
    std::string json;
    bool passed;
};

/// Cross-checks closed forms against the brute-force oracle.
OracleCheckResult oracle_check(const RunConfig& cfg);

/// CSV over n_values x ensembles x seeds.
std::string sweep(const RunConfig& cfg, const Options& opts);

/// JSON with the exact-orthogonality and eps-perturbed information reports.
std::string info(const RunConfig& cfg);

}  // namespace pointerlab::commands
