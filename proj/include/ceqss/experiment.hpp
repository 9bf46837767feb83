// experiment.hpp
// Deterministic Monte Carlo experiment runner. Every trial draws its
// generator from (master seed, trial index), and metrics are commutative
// integer counts, so results are byte-identical whether trials run
// serially, out of order, or across OpenMP threads.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "ceqss/adversary.hpp"

namespace ceqss {

enum class SchemeKind { Ghz, Cd, Threshold };

std::string scheme_name(SchemeKind scheme);
SchemeKind scheme_from_name(const std::string& name);

// Which protocol endings a trial exercises. Both plays out reconstruction
// and the seal/revocation check on independent deals; the narrower modes
// halve the work when only one metric is wanted.
enum class Phases { Both, Reconstruct, Seal };

std::string phases_name(Phases phases);
Phases phases_from_name(const std::string& name);

struct ExperimentConfig {
    SchemeKind scheme = SchemeKind::Ghz;
    int n = 10;
    int m = 16;   // BB84 register length per ciphertext (cd/threshold)
    int d = 2;    // qudit dimension; doubles as the field prime for threshold
    int t = 3;    // threshold
    int missing = 0;  // the highest-numbered k parties sit out
    std::map<int, Strategy> strategies;  // party id -> behavior; absent entries mean honest
    std::int64_t trials = 20000;
    std::uint64_t seed = 1;
    std::string out;           // report destination; empty = stdout
    Phases phases = Phases::Both;
    std::string artifact_log;  // optional: dump trial-0 deal artifacts here (cd/threshold)
};

// Config validation failure; `field` names the offending config entry.
struct ConfigError : std::invalid_argument {
    std::string field;
    ConfigError(std::string field_name, const std::string& message)
        : std::invalid_argument(field_name + ": " + message), field(std::move(field_name)) {}
};

void validate_config(const ExperimentConfig& config);

struct MetricCount {
    std::int64_t count = 0;
    std::int64_t trials = 0;

    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(trials); }
    std::pair<double, double> wilson95() const;
};

// Wilson score interval for a binomial proportion, z = 1.96.
std::pair<double, double> wilson_interval(std::int64_t count, std::int64_t trials);

struct ExperimentReport {
    int schema_version = 1;
    std::string library_version;
    ExperimentConfig config;
    // Keys: "reconstruction_success", "cheat_detection",
    // "per_party_rejection.<id>" (cd/threshold), "revoked" (threshold).
    std::map<std::string, MetricCount> metrics;
    double wall_clock_ms = 0.0;
};

// OpenMP-parallel trial loop.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Plain serial loop kept as the reference implementation; must produce the
// identical report (up to wall-clock) for any config and seed.
ExperimentReport run_experiment_serial(const ExperimentConfig& config);

} // namespace ceqss
