// bench.cpp
// Compares the OpenMP trial runner against the serial reference on the two
// schemes and checks that both produce identical metrics.

#include <chrono>
#include <iomanip>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ceqss/experiment.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(ceqss::ExperimentReport (*runner)(const ceqss::ExperimentConfig&),
               const ceqss::ExperimentConfig& cfg, ceqss::ExperimentReport& out) {
    const auto start = Clock::now();
    out = runner(cfg);
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void bench(const std::string& label, const ceqss::ExperimentConfig& cfg) {
    ceqss::ExperimentReport serial;
    ceqss::ExperimentReport parallel;
    const double t_serial = time_ms(ceqss::run_experiment_serial, cfg, serial);
    const double t_parallel = time_ms(ceqss::run_experiment, cfg, parallel);

    bool identical = serial.metrics.size() == parallel.metrics.size();
    for (const auto& [name, metric] : serial.metrics) {
        const auto it = parallel.metrics.find(name);
        identical = identical && it != parallel.metrics.end() && it->second.count == metric.count;
    }

    std::cout << std::left << std::setw(26) << label << std::fixed << std::setprecision(1)
              << "serial " << std::setw(9) << t_serial << "ms   openmp " << std::setw(9)
              << t_parallel << "ms   speedup " << std::setprecision(2) << t_serial / t_parallel
              << "x   metrics " << (identical ? "identical" : "MISMATCH") << "\n";
}

} // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP not enabled; both runs are serial\n";
#endif

    ceqss::ExperimentConfig ghz;
    ghz.scheme = ceqss::SchemeKind::Ghz;
    ghz.trials = 20000;
    ghz.strategies[0] = ceqss::Strategy::MeasureEarly;
    bench("ghz n=10 (20k trials)", ghz);

    ceqss::ExperimentConfig cd;
    cd.scheme = ceqss::SchemeKind::Cd;
    cd.n = 5;
    cd.m = 16;
    cd.trials = 20000;
    cd.strategies[0] = ceqss::Strategy::MeasureEarly;
    bench("cd n=5 m=16 (20k trials)", cd);

    ceqss::ExperimentConfig threshold;
    threshold.scheme = ceqss::SchemeKind::Threshold;
    threshold.n = 5;
    threshold.t = 3;
    threshold.d = 7;
    threshold.m = 4;
    threshold.trials = 20000;
    bench("threshold p=7 (20k trials)", threshold);

    return 0;
}
