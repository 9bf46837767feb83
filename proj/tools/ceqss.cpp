// ceqss.cpp
// Command-line front end: run a scheme experiment (ghz / cd / threshold) or
// the acceptance suite. Exit codes: 0 success, 1 usage or config error,
// 2 acceptance failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ceqss/acceptance.hpp"
#include "ceqss/report.hpp"

namespace {

using ceqss::ExperimentConfig;

struct CliOptions {
    std::string config_path;
    std::string cheaters;
    std::string strategy = "measure-early";
    std::string format = "json";
    std::string phases;
    std::string out;
    std::string artifact_log;
};

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        throw ceqss::ConfigError("config", "cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto j = nlohmann::json::parse(buffer.str());
    for (const auto& [key, value] : j.items()) {
        if (key == "scheme") {
            cfg.scheme = ceqss::scheme_from_name(value.get<std::string>());
        } else if (key == "n") {
            cfg.n = value.get<int>();
        } else if (key == "m") {
            cfg.m = value.get<int>();
        } else if (key == "d") {
            cfg.d = value.get<int>();
        } else if (key == "t") {
            cfg.t = value.get<int>();
        } else if (key == "missing") {
            cfg.missing = value.get<int>();
        } else if (key == "strategies") {
            for (const auto& [party, name] : value.items()) {
                cfg.strategies[std::stoi(party)] = ceqss::strategy_from_name(name.get<std::string>());
            }
        } else if (key == "trials") {
            cfg.trials = value.get<std::int64_t>();
        } else if (key == "seed") {
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "out") {
            cfg.out = value.get<std::string>();
        } else if (key == "phases") {
            cfg.phases = ceqss::phases_from_name(value.get<std::string>());
        } else if (key == "artifact_log") {
            cfg.artifact_log = value.get<std::string>();
        } else {
            throw ceqss::ConfigError(key, "unknown config field");
        }
    }
}

void add_scheme_command(CLI::App& app, const std::string& name, const std::string& description,
                        ceqss::SchemeKind scheme, int* exit_code) {
    CLI::App* cmd = app.add_subcommand(name, description);
    auto opts = std::make_shared<CliOptions>();
    auto cfg = std::make_shared<ExperimentConfig>();
    cfg->scheme = scheme;
    if (scheme == ceqss::SchemeKind::Threshold) {
        cfg->n = 5;  // the field prime bounds the party count
        cfg->d = 7;
        cfg->m = 4;  // 7^4 quantum part; the 2^20 cap rules out long registers
    }
    if (scheme == ceqss::SchemeKind::Cd) {
        cfg->n = 5;
    }

    cmd->add_option("--config", opts->config_path, "JSON config file (flags override)");
    auto* n_opt = cmd->add_option("--n", cfg->n, "party count");
    auto* m_opt = cmd->add_option("--m", cfg->m, "register length per ciphertext");
    auto* d_opt = cmd->add_option("--d", cfg->d, "qudit dimension (field prime for threshold)");
    auto* t_opt = cmd->add_option("--t", cfg->t, "threshold");
    auto* missing_opt = cmd->add_option("--missing", cfg->missing, "absent party count");
    auto* cheaters_opt = cmd->add_option("--cheaters", opts->cheaters, "comma-separated cheater ids");
    auto* strategy_opt = cmd->add_option("--strategy", opts->strategy,
                                         "cheater behavior (honest, measure-early, "
                                         "fabricate-certificate, absent)");
    auto* trials_opt = cmd->add_option("--trials", cfg->trials, "Monte Carlo trials");
    auto* seed_opt = cmd->add_option("--seed", cfg->seed, "master seed");
    cmd->add_option("--format", opts->format, "json, csv or table")->default_val("json");
    auto* out_opt = cmd->add_option("--out", opts->out, "report path (default stdout)");
    auto* phases_opt = cmd->add_option("--phases", opts->phases, "both, reconstruct or seal");
    auto* log_opt = cmd->add_option("--log-artifacts", opts->artifact_log,
                                    "dump trial-0 deal artifacts to this file");

    cmd->callback([=]() {
        try {
            ExperimentConfig config = *cfg;
            if (!opts->config_path.empty()) {
                // File values first, then any explicitly set flags on top.
                ExperimentConfig from_file = *cfg;
                load_config_file(opts->config_path, from_file);
                const ExperimentConfig flag_values = config;
                config = from_file;
                if (n_opt->count()) config.n = flag_values.n;
                if (m_opt->count()) config.m = flag_values.m;
                if (d_opt->count()) config.d = flag_values.d;
                if (t_opt->count()) config.t = flag_values.t;
                if (missing_opt->count()) config.missing = flag_values.missing;
                if (trials_opt->count()) config.trials = flag_values.trials;
                if (seed_opt->count()) config.seed = flag_values.seed;
            }
            if (cheaters_opt->count()) {
                if (!strategy_opt->count() && opts->strategy.empty()) {
                    throw ceqss::ConfigError("strategies", "--cheaters needs --strategy");
                }
                const ceqss::Strategy strategy = ceqss::strategy_from_name(opts->strategy);
                std::stringstream list(opts->cheaters);
                std::string id;
                while (std::getline(list, id, ',')) {
                    config.strategies[std::stoi(id)] = strategy;
                }
            }
            if (phases_opt->count()) {
                config.phases = ceqss::phases_from_name(opts->phases);
            }
            if (out_opt->count()) {
                config.out = opts->out;
            }
            if (log_opt->count()) {
                config.artifact_log = opts->artifact_log;
            }

            ceqss::validate_config(config);
            const auto report = ceqss::run_experiment(config);
            const std::string rendered =
                ceqss::emit_report(report, ceqss::format_from_name(opts->format));
            if (config.out.empty()) {
                std::cout << rendered;
            } else {
                std::ofstream file(config.out);
                if (!file) {
                    throw std::runtime_error("cannot open output path: " + config.out);
                }
                file << rendered;
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            *exit_code = 1;
        }
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CE-QSS-Seal protocol simulator and experiment harness"};
    app.require_subcommand(1);
    int exit_code = 0;

    add_scheme_command(app, "ghz", "entangled-state scheme experiments", ceqss::SchemeKind::Ghz,
                       &exit_code);
    add_scheme_command(app, "cd", "certified-deletion scheme experiments", ceqss::SchemeKind::Cd,
                       &exit_code);
    add_scheme_command(app, "threshold", "revocable threshold scheme experiments",
                       ceqss::SchemeKind::Threshold, &exit_code);

    CLI::App* accept = app.add_subcommand("accept", "run the acceptance suite");
    auto accept_seed = std::make_shared<std::uint64_t>(1);
    accept->add_option("--seed", *accept_seed, "master seed for the suite");
    accept->callback([&exit_code, accept_seed]() {
        exit_code = ceqss::acceptance_suite(std::cout, *accept_seed);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // --help stays 0; every usage error is 1
    }
    return exit_code;
}
