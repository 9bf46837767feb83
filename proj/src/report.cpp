#include "ceqss/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace ceqss {

namespace {

using nlohmann::json;

json config_to_json(const ExperimentConfig& cfg) {
    json strategies = json::object();
    for (const auto& [party, strategy] : cfg.strategies) {
        strategies[std::to_string(party)] = strategy_name(strategy);
    }
    return json{{"scheme", scheme_name(cfg.scheme)},
                {"n", cfg.n},
                {"m", cfg.m},
                {"d", cfg.d},
                {"t", cfg.t},
                {"missing", cfg.missing},
                {"strategies", strategies},
                {"trials", cfg.trials},
                {"seed", cfg.seed},
                {"out", cfg.out},
                {"phases", phases_name(cfg.phases)},
                {"artifact_log", cfg.artifact_log}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    cfg.n = j.at("n").get<int>();
    cfg.m = j.at("m").get<int>();
    cfg.d = j.at("d").get<int>();
    cfg.t = j.at("t").get<int>();
    cfg.missing = j.at("missing").get<int>();
    for (const auto& [key, value] : j.at("strategies").items()) {
        cfg.strategies[std::stoi(key)] = strategy_from_name(value.get<std::string>());
    }
    cfg.trials = j.at("trials").get<std::int64_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.out = j.at("out").get<std::string>();
    cfg.phases = phases_from_name(j.at("phases").get<std::string>());
    cfg.artifact_log = j.at("artifact_log").get<std::string>();
    return cfg;
}

std::string percent(double rate) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << rate * 100.0 << '%';
    return out.str();
}

} // namespace

std::string format_name(ReportFormat format) {
    switch (format) {
    case ReportFormat::Json:
        return "json";
    case ReportFormat::Csv:
        return "csv";
    case ReportFormat::Table:
        return "table";
    }
    throw std::logic_error("format_name: unreachable");
}

ReportFormat format_from_name(const std::string& name) {
    if (name == "json") {
        return ReportFormat::Json;
    }
    if (name == "csv") {
        return ReportFormat::Csv;
    }
    if (name == "table") {
        return ReportFormat::Table;
    }
    throw std::invalid_argument("unknown report format: " + name);
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::Json: {
        json metrics = json::object();
        for (const auto& [name, metric] : report.metrics) {
            const auto [lo, hi] = metric.wilson95();
            metrics[name] = json{{"count", metric.count},
                                 {"trials", metric.trials},
                                 {"rate", metric.rate()},
                                 {"wilson95", json::array({lo, hi})}};
        }
        const json j{{"schema_version", report.schema_version},
                     {"library_version", report.library_version},
                     {"config", config_to_json(report.config)},
                     {"metrics", metrics},
                     {"wall_clock_ms", report.wall_clock_ms}};
        return j.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
        std::ostringstream out;
        out << "metric,count,trials,rate,wilson_lo,wilson_hi\n";
        out << std::setprecision(17);
        for (const auto& [name, metric] : report.metrics) {
            const auto [lo, hi] = metric.wilson95();
            out << name << ',' << metric.count << ',' << metric.trials << ',' << metric.rate()
                << ',' << lo << ',' << hi << '\n';
        }
        return out.str();
    }
    case ReportFormat::Table:
        return emit_table({report});
    }
    throw std::logic_error("emit_report: unreachable");
}

std::string emit_table(const std::vector<ExperimentReport>& reports) {
    std::ostringstream out;
    out << std::left << std::setw(11) << "Scheme" << std::setw(15) << "Security" << std::setw(29)
        << "Reconstruction probability" << "Cheat detecting probability" << '\n';
    for (const auto& report : reports) {
        const bool unconditional = report.config.scheme == SchemeKind::Ghz;
        const auto recon = report.metrics.find("reconstruction_success");
        const auto detect = report.metrics.find("cheat_detection");
        out << std::left << std::setw(11) << scheme_name(report.config.scheme) << std::setw(15)
            << (unconditional ? "Unconditional" : "Post-Quantum") << std::setw(29)
            << (recon == report.metrics.end() ? std::string("-") : percent(recon->second.rate()))
            << (detect == report.metrics.end() ? std::string("-") : percent(detect->second.rate()))
            << '\n';
    }
    return out.str();
}

ExperimentReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    ExperimentReport report;
    report.schema_version = j.at("schema_version").get<int>();
    report.library_version = j.at("library_version").get<std::string>();
    report.config = config_from_json(j.at("config"));
    for (const auto& [name, metric] : j.at("metrics").items()) {
        report.metrics[name] = MetricCount{metric.at("count").get<std::int64_t>(),
                                           metric.at("trials").get<std::int64_t>()};
    }
    report.wall_clock_ms = j.at("wall_clock_ms").get<double>();
    return report;
}

} // namespace ceqss
