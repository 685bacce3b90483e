#pragma once

#include "dtsim/harness.hpp"
#include "dtsim/scenario.hpp"

#include <filesystem>
#include <vector>

namespace dtsim {

struct ExperimentOptions {
    std::vector<Approach> approaches{Approach::UAPT, Approach::UADT, Approach::MDTS};
    int runs = 1;
    unsigned threads = 1;
    bool keep_traces = false;
};

/// Runs ordered approach-major, then by run_id, whatever the thread count.
struct ExperimentResult {
    std::vector<RunResult> runs;
};

/// Every (approach, run_id) pair of `options` on a pool of worker threads.
/// The first exception thrown by any run is rethrown after all workers stop.
ExperimentResult run_experiment(const ScenarioConfig& cfg, const ExperimentOptions& options);

/// Writes switch_errors.csv, uncertainties.csv and manifest.txt into
/// `out_dir`, plus traces/<approach>_run<id>.csv for runs that kept a trace.
void write_experiment(const ExperimentResult& result, const ScenarioConfig& cfg, const ExperimentOptions& options,
                      const std::filesystem::path& out_dir);

void write_manifest(std::ostream& os, const ScenarioConfig& cfg, const std::vector<Approach>& approaches, int runs);

std::string trace_file_name(Approach a, int run_id);

}  // namespace dtsim
