#include "ceqss/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <vector>

#include "ceqss/cdscheme.hpp"
#include "ceqss/version.hpp"
#include "ceqss/wire.hpp"

namespace ceqss {

namespace {

struct TrialResult {
    int recon_success = -1;  // -1 = phase not run
    int detected = -1;
    int revoked = -1;
    std::vector<std::uint8_t> rejected;  // per party, seal phase of cd/threshold
};

Strategy strategy_of(const ExperimentConfig& cfg, int party) {
    if (party >= cfg.n - cfg.missing) {
        return Strategy::Absent;
    }
    const auto it = cfg.strategies.find(party);
    return it == cfg.strategies.end() ? Strategy::Honest : it->second;
}

std::set<std::size_t> present_parties(const ExperimentConfig& cfg) {
    std::set<std::size_t> present;
    for (int party = 0; party < cfg.n; ++party) {
        if (strategy_of(cfg, party) != Strategy::Absent) {
            present.insert(static_cast<std::size_t>(party));
        }
    }
    return present;
}

std::map<std::size_t, Strategy> behavior_map(const ExperimentConfig& cfg) {
    std::map<std::size_t, Strategy> behaviors;
    for (int party = 0; party < cfg.n; ++party) {
        const Strategy s = strategy_of(cfg, party);
        if (s != Strategy::Honest) {
            behaviors[static_cast<std::size_t>(party)] = s;
        }
    }
    return behaviors;
}

// Honest parties verify deterministically, so any rejection implicates a
// dishonest one.
bool any_rejection(const RevocationReport& report) {
    for (const auto& [party, verdict] : report.verdicts) {
        if (verdict == CertVerdict::Rejected) {
            return true;
        }
    }
    return false;
}

// Serialized deal artifacts from the seal phase of trial 0, for the trial log.
struct ArtifactSink {
    bool wanted = false;
    Bytes bytes;
};

void log_cd_artifacts(ArtifactSink* sink, const CdDeal& deal) {
    if (sink == nullptr || !sink->wanted) {
        return;
    }
    ByteWriter w;
    w.put_u32(0x4c54'5143u);  // "CQTL"
    w.put_u32(1u);            // log format version
    w.put_u32(static_cast<std::uint32_t>(deal.n));
    for (int i = 0; i < deal.n; ++i) {
        w.put_bytes(serialize_record(deal.records[i]));
        w.put_bytes(serialize_classical_part(deal.shares[i].ciphertext));
    }
    sink->bytes = w.take();
}

void log_threshold_artifacts(ArtifactSink* sink, const ThresholdDeal& deal) {
    if (sink == nullptr || !sink->wanted) {
        return;
    }
    ByteWriter w;
    w.put_u32(0x4c54'5143u);
    w.put_u32(1u);
    w.put_u32(static_cast<std::uint32_t>(deal.n));
    for (int i = 0; i < deal.n; ++i) {
        w.put_bytes(serialize_record(deal.records[i]));
        w.put_bytes(serialize_classical_part(deal.shares[i].ciphertext));
    }
    sink->bytes = w.take();
}

TrialResult run_ghz_trial(const ExperimentConfig& cfg, Rng& rng) {
    TrialResult result;
    if (cfg.phases != Phases::Seal) {
        Rng r = rng.split();
        Secret secret{DigitString::random(static_cast<std::size_t>(cfg.n) - 1, 2, r)};
        GhzDeal d = deal(secret, r);
        result.recon_success = reconstruct(d, present_parties(cfg), r).success ? 1 : 0;
    }
    if (cfg.phases != Phases::Reconstruct) {
        Rng r = rng.split();
        Secret secret{DigitString::random(static_cast<std::size_t>(cfg.n) - 1, 2, r)};
        GhzDeal d = deal(secret, r);
        bool refused = false;
        for (int party = 0; party < cfg.n; ++party) {
            const GhzResponse response =
                apply_strategy(strategy_of(cfg, party), d, static_cast<std::size_t>(party), r);
            refused = refused || !response.returns_share;
        }
        // A withheld particle is trivially detected; the projective check
        // needs the full register back.
        const bool detected = refused || seal_check(d, r) == SealVerdict::CheatDetected;
        result.detected = detected ? 1 : 0;
    }
    return result;
}

TrialResult run_cd_trial(const ExperimentConfig& cfg, Rng& rng, ArtifactSink* sink) {
    TrialResult result;
    if (cfg.phases != Phases::Seal) {
        Rng r = rng.split();
        DigitString secret = DigitString::random(static_cast<std::size_t>(cfg.n), 2, r);
        CdDeal d = cd_deal(secret, cfg.m, r);
        result.recon_success = cd_reconstruct(d, present_parties(cfg), r).success ? 1 : 0;
    }
    if (cfg.phases != Phases::Reconstruct) {
        Rng r = rng.split();
        DigitString secret = DigitString::random(static_cast<std::size_t>(cfg.n), 2, r);
        CdDeal d = cd_deal(secret, cfg.m, r);
        log_cd_artifacts(sink, d);
        const RevocationReport report = cd_revoke(d, behavior_map(cfg), r);
        result.rejected.assign(static_cast<std::size_t>(cfg.n), 0);
        for (const auto& [party, verdict] : report.verdicts) {
            result.rejected[party] = verdict == CertVerdict::Rejected ? 1 : 0;
        }
        result.detected = any_rejection(report) ? 1 : 0;
    }
    return result;
}

TrialResult run_threshold_trial(const ExperimentConfig& cfg, Rng& rng, ArtifactSink* sink) {
    TrialResult result;
    const auto p = static_cast<std::uint32_t>(cfg.d);
    if (cfg.phases != Phases::Seal) {
        Rng r = rng.split();
        const auto secret = static_cast<std::uint32_t>(r.next_below(p));
        ThresholdDeal d = threshold_deal(secret, cfg.t, cfg.n, p, cfg.m, r);
        const auto present = present_parties(cfg);
        // Below the threshold no interpolation is possible at all.
        result.recon_success = static_cast<int>(present.size()) >= cfg.t
                                   ? (threshold_reconstruct(d, present, r).success ? 1 : 0)
                                   : 0;
    }
    if (cfg.phases != Phases::Reconstruct) {
        Rng r = rng.split();
        const auto secret = static_cast<std::uint32_t>(r.next_below(p));
        ThresholdDeal d = threshold_deal(secret, cfg.t, cfg.n, p, cfg.m, r);
        log_threshold_artifacts(sink, d);
        std::set<std::size_t> responders;
        for (int party = 0; party < cfg.n; ++party) {
            responders.insert(static_cast<std::size_t>(party));
        }
        const ThresholdRevocation revocation = threshold_revoke(d, responders, behavior_map(cfg), r);
        result.rejected.assign(static_cast<std::size_t>(cfg.n), 0);
        for (const auto& [party, verdict] : revocation.report.verdicts) {
            result.rejected[party] = verdict == CertVerdict::Rejected ? 1 : 0;
        }
        result.detected = any_rejection(revocation.report) ? 1 : 0;
        result.revoked = revocation.revoked ? 1 : 0;
    }
    return result;
}

TrialResult run_trial(const ExperimentConfig& cfg, std::int64_t trial, ArtifactSink* sink) {
    Rng rng = Rng::derive(cfg.seed, static_cast<std::uint64_t>(trial));
    ArtifactSink* trial_sink = trial == 0 ? sink : nullptr;
    switch (cfg.scheme) {
    case SchemeKind::Ghz:
        return run_ghz_trial(cfg, rng);
    case SchemeKind::Cd:
        return run_cd_trial(cfg, rng, trial_sink);
    case SchemeKind::Threshold:
        return run_threshold_trial(cfg, rng, trial_sink);
    }
    throw std::logic_error("run_trial: unreachable");
}

struct Accumulator {
    std::int64_t recon = 0;
    std::int64_t detected = 0;
    std::int64_t revoked = 0;
    std::vector<std::int64_t> rejected;

    explicit Accumulator(int n) : rejected(static_cast<std::size_t>(n), 0) {}

    void add(const TrialResult& r) {
        recon += r.recon_success == 1;
        detected += r.detected == 1;
        revoked += r.revoked == 1;
        for (std::size_t i = 0; i < r.rejected.size(); ++i) {
            rejected[i] += r.rejected[i];
        }
    }

    void merge(const Accumulator& other) {
        recon += other.recon;
        detected += other.detected;
        revoked += other.revoked;
        for (std::size_t i = 0; i < rejected.size(); ++i) {
            rejected[i] += other.rejected[i];
        }
    }
};

ExperimentReport assemble_report(const ExperimentConfig& cfg, const Accumulator& acc,
                                 double wall_ms) {
    ExperimentReport report;
    report.library_version = kLibraryVersion;
    report.config = cfg;
    report.wall_clock_ms = wall_ms;
    const std::int64_t n_trials = cfg.trials;
    if (cfg.phases != Phases::Seal) {
        report.metrics["reconstruction_success"] = MetricCount{acc.recon, n_trials};
    }
    if (cfg.phases != Phases::Reconstruct) {
        report.metrics["cheat_detection"] = MetricCount{acc.detected, n_trials};
        if (cfg.scheme != SchemeKind::Ghz) {
            for (int party = 0; party < cfg.n; ++party) {
                report.metrics["per_party_rejection." + std::to_string(party)] =
                    MetricCount{acc.rejected[static_cast<std::size_t>(party)], n_trials};
            }
        }
        if (cfg.scheme == SchemeKind::Threshold) {
            report.metrics["revoked"] = MetricCount{acc.revoked, n_trials};
        }
    }
    return report;
}

void write_artifact_log(const ExperimentConfig& cfg, const ArtifactSink& sink) {
    if (cfg.artifact_log.empty() || sink.bytes.empty()) {
        return;
    }
    std::ofstream out(cfg.artifact_log, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open artifact log: " + cfg.artifact_log);
    }
    out.write(reinterpret_cast<const char*>(sink.bytes.data()),
              static_cast<std::streamsize>(sink.bytes.size()));
}

ExperimentReport run_common(const ExperimentConfig& cfg, bool parallel) {
    validate_config(cfg);
    const auto start = std::chrono::steady_clock::now();
    ArtifactSink sink;
    sink.wanted = !cfg.artifact_log.empty();
    Accumulator total(cfg.n);

    if (parallel) {
#pragma omp parallel
        {
            Accumulator local(cfg.n);
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < cfg.trials; ++i) {
                local.add(run_trial(cfg, i, &sink));
            }
#pragma omp critical
            total.merge(local);
        }
    } else {
        for (std::int64_t i = 0; i < cfg.trials; ++i) {
            total.add(run_trial(cfg, i, &sink));
        }
    }

    write_artifact_log(cfg, sink);
    const auto stop = std::chrono::steady_clock::now();
    const double wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return assemble_report(cfg, total, wall_ms);
}

} // namespace

std::string scheme_name(SchemeKind scheme) {
    switch (scheme) {
    case SchemeKind::Ghz:
        return "ghz";
    case SchemeKind::Cd:
        return "cd";
    case SchemeKind::Threshold:
        return "threshold";
    }
    throw std::logic_error("scheme_name: unreachable");
}

SchemeKind scheme_from_name(const std::string& name) {
    if (name == "ghz") {
        return SchemeKind::Ghz;
    }
    if (name == "cd") {
        return SchemeKind::Cd;
    }
    if (name == "threshold") {
        return SchemeKind::Threshold;
    }
    throw ConfigError("scheme", "unknown scheme: " + name);
}

std::string phases_name(Phases phases) {
    switch (phases) {
    case Phases::Both:
        return "both";
    case Phases::Reconstruct:
        return "reconstruct";
    case Phases::Seal:
        return "seal";
    }
    throw std::logic_error("phases_name: unreachable");
}

Phases phases_from_name(const std::string& name) {
    if (name == "both") {
        return Phases::Both;
    }
    if (name == "reconstruct") {
        return Phases::Reconstruct;
    }
    if (name == "seal") {
        return Phases::Seal;
    }
    throw ConfigError("phases", "unknown phases mode: " + name);
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) {
        throw ConfigError("trials", "must be >= 1");
    }
    if (cfg.missing < 0 || cfg.missing > cfg.n) {
        throw ConfigError("missing", "must be in [0, n]");
    }
    for (const auto& [party, strategy] : cfg.strategies) {
        if (party < 0 || party >= cfg.n) {
            throw ConfigError("strategies", "party id out of range: " + std::to_string(party));
        }
        if (cfg.scheme == SchemeKind::Ghz && strategy == Strategy::FabricateCertificate) {
            throw ConfigError("strategies", "fabricate-certificate does not apply to the ghz scheme");
        }
    }

    switch (cfg.scheme) {
    case SchemeKind::Ghz: {
        if (cfg.d != 2) {
            throw ConfigError("d", "ghz scheme is binary; d must be 2");
        }
        if (cfg.n < 2 || cfg.n > 20) {
            throw ConfigError("n", "ghz scheme needs n in [2, 20]");
        }
        break;
    }
    case SchemeKind::Cd: {
        if (cfg.d != 2) {
            throw ConfigError("d", "cd scheme is bitwise; d must be 2");
        }
        if (cfg.n < 1) {
            throw ConfigError("n", "must be >= 1");
        }
        if (cfg.m < 2) {
            throw ConfigError("m", "must be >= 2");
        }
        try {
            state_dimension(cfg.d, cfg.m);
        } catch (const std::length_error&) {
            throw ConfigError("m", "d^m exceeds the 2^20 state cap");
        }
        break;
    }
    case SchemeKind::Threshold: {
        if (!is_prime(static_cast<std::uint32_t>(cfg.d))) {
            throw ConfigError("d", "threshold scheme needs a prime qudit dimension");
        }
        if (cfg.t < 2 || cfg.t > cfg.n || cfg.n >= cfg.d) {
            throw ConfigError("t", "need 1 < t <= n < d");
        }
        if (cfg.m < 2) {
            throw ConfigError("m", "must be >= 2");
        }
        try {
            state_dimension(cfg.d, cfg.m);
        } catch (const std::length_error&) {
            throw ConfigError("m", "d^m exceeds the 2^20 state cap");
        }
        break;
    }
    }

    if (cfg.phases != Phases::Seal) {
        std::size_t present = 0;
        for (int party = 0; party < cfg.n; ++party) {
            present += strategy_of(cfg, party) != Strategy::Absent;
        }
        if (present == 0) {
            throw ConfigError("missing", "reconstruction needs at least one present party");
        }
    }
}

std::pair<double, double> wilson_interval(std::int64_t count, std::int64_t trials) {
    if (trials <= 0) {
        return {0.0, 0.0};
    }
    const double z = 1.96;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(count) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::pair<double, double> MetricCount::wilson95() const {
    return wilson_interval(count, trials);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    return run_common(config, true);
}

ExperimentReport run_experiment_serial(const ExperimentConfig& config) {
    return run_common(config, false);
}

} // namespace ceqss
