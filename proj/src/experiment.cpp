#include "dtsim/experiment.hpp"

#include "dtsim/trace.hpp"

#include <fmt/format.h>

#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#ifndef DTSIM_VERSION
#define DTSIM_VERSION "unknown"
#endif

namespace dtsim {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    }
    return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error(fmt::format("write failed for {}", path.string()));
    }
}

}  // namespace

ExperimentResult run_experiment(const ScenarioConfig& cfg, const ExperimentOptions& options) {
    if (options.runs < 1) {
        throw std::invalid_argument(fmt::format("runs must be >= 1, got {}", options.runs));
    }
    if (options.approaches.empty()) {
        throw std::invalid_argument("no approach selected");
    }
    std::vector<ScenarioConfig> configs;
    for (auto a : options.approaches) {
        ScenarioConfig c = cfg;
        c.approach = a;
        c.validate();
        configs.push_back(c);
    }

    const std::size_t runs = static_cast<std::size_t>(options.runs);
    const std::size_t jobs = configs.size() * runs;
    ExperimentResult result;
    result.runs.resize(jobs);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const RunOptions run_options{options.keep_traces};

    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            try {
                const auto& c = configs[job / runs];
                result.runs[job] = run_scenario(c, static_cast<int>(job % runs), run_options);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = jobs;
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(jobs)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return result;
}

std::string trace_file_name(Approach a, int run_id) { return fmt::format("{}_run{:03d}.csv", to_string(a), run_id); }

void write_manifest(std::ostream& os, const ScenarioConfig& cfg, const std::vector<Approach>& approaches, int runs) {
    os << "# dtsim experiment manifest\n";
    os << "version = " << DTSIM_VERSION << '\n';
    os << "seed = " << cfg.seed << '\n';
    os << "runs = " << runs << '\n';
    std::string list;
    for (auto a : approaches) {
        if (!list.empty()) {
            list += ',';
        }
        list += to_string(a);
    }
    os << "approaches = " << list << '\n';
    os << "# configuration\n";
    ScenarioConfig echo = cfg;
    echo.runs = runs;
    os << to_text(echo);
}

void write_experiment(const ExperimentResult& result, const ScenarioConfig& cfg, const ExperimentOptions& options,
                      const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    const auto switch_path = out_dir / "switch_errors.csv";
    auto switches = open_out(switch_path);
    write_switch_header(switches);
    for (const auto& run : result.runs) {
        for (const auto& e : run.switches) {
            write_switch_error(switches, e);
        }
    }
    check_written(switches, switch_path);

    const auto u_path = out_dir / "uncertainties.csv";
    auto uncertainties = open_out(u_path);
    write_uncertainty_header(uncertainties);
    for (const auto& run : result.runs) {
        for (const auto& s : run.uncertainties) {
            write_uncertainty(uncertainties, s);
        }
    }
    check_written(uncertainties, u_path);

    const auto manifest_path = out_dir / "manifest.txt";
    auto manifest = open_out(manifest_path);
    write_manifest(manifest, cfg, options.approaches, options.runs);
    check_written(manifest, manifest_path);

    bool any_trace = false;
    for (const auto& run : result.runs) {
        if (run.trace.empty()) {
            continue;
        }
        if (!any_trace) {
            std::filesystem::create_directories(out_dir / "traces");
            any_trace = true;
        }
        const auto path = out_dir / "traces" / trace_file_name(run.approach, run.run_id);
        auto out = open_out(path);
        write_trace(out, run.trace);
        check_written(out, path);
    }
}

}  // namespace dtsim
