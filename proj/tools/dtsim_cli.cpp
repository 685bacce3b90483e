// Command-line front end: run, experiment, calibrate, summarize.

#include "dtsim/calibration.hpp"
#include "dtsim/experiment.hpp"
#include "dtsim/scenario.hpp"
#include "dtsim/summary.hpp"
#include "dtsim/trace.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

struct Overrides {
    std::string scenario;
    std::optional<double> duration;
    std::optional<double> step;
    std::optional<std::uint64_t> seed;
    std::optional<double> confidence;
    std::optional<double> reliability_limit;
    std::optional<double> consistency_threshold;
    std::optional<double> fail_at;
    std::optional<double> g_box_factor;
    std::optional<double> k_num;
    std::vector<std::string> sets;

    void attach(CLI::App* app) {
        app->add_option("--scenario", scenario, "Scenario file (key = value)")->check(CLI::ExistingFile);
        app->add_option("--duration", duration, "Run length in seconds");
        app->add_option("--step", step, "Solver step h in seconds");
        app->add_option("--seed", seed, "Base seed; run i uses seed + i");
        app->add_option("--confidence", confidence, "Confidence level of the uncertainty-aware controller");
        app->add_option("--reliability-limit", reliability_limit, "Twin std above which it is not trusted");
        app->add_option("--consistency-threshold", consistency_threshold, "Degree at or below which twins disagree");
        app->add_option("--fail-at", fail_at, "Inject the lid-opening failure at this time (s)");
        app->add_option("--g-box-factor", g_box_factor, "Heat-loss multiplier of the failure");
        app->add_option("--k-num", k_num, "Numerical error coefficient of the twin");
        app->add_option("--set", sets, "Extra scenario override key=value (repeatable)");
    }

    dtsim::ScenarioConfig apply() const {
        dtsim::ScenarioConfig cfg = scenario.empty() ? dtsim::ScenarioConfig{} : dtsim::load_scenario(scenario);
        if (duration) cfg.duration = *duration;
        if (step) cfg.solver.h = *step;
        if (seed) cfg.seed = *seed;
        if (confidence) cfg.band.confidence = *confidence;
        if (reliability_limit) cfg.fusion.reliability_limit = *reliability_limit;
        if (consistency_threshold) cfg.consistency.r = *consistency_threshold;
        if (fail_at) {
            cfg.failure.enabled = true;
            cfg.failure.time = *fail_at;
        }
        if (g_box_factor) cfg.failure.g_box_factor = *g_box_factor;
        if (k_num) cfg.solver.k_num = *k_num;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument(fmt::format("--set expects key=value, got '{}'", s));
            }
            dtsim::set_scenario_key(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        return cfg;
    }
};

void print_summary_files(const std::filesystem::path& out) {
    std::ifstream in(out / "switch_errors.csv");
    const auto errors = dtsim::read_switch_errors(in);
    if (!errors.empty()) {
        dtsim::write_summary(std::cout, dtsim::summarize(errors));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uncertainty-aware digital twin co-simulation of an incubator"};
    app.require_subcommand(1);

    Overrides run_ov;
    std::string run_approach;
    int run_id = 0;
    std::string run_out = "out";
    auto* run = app.add_subcommand("run", "One scenario run; writes its trace and switch/uncertainty logs");
    run_ov.attach(run);
    run->add_option("--approach", run_approach, "GT, PT, UAPT, UADT or MDTS");
    run->add_option("--run-id", run_id, "Run index (seed offset)");
    run->add_option("--out", run_out, "Output directory");

    Overrides exp_ov;
    std::string exp_approaches = "UAPT,UADT,MDTS";
    std::optional<int> exp_runs;
    unsigned exp_threads = std::max(1u, std::thread::hardware_concurrency());
    bool exp_traces = false;
    std::string exp_out = "out";
    auto* exp = app.add_subcommand("experiment", "Many runs per approach; writes switch_errors.csv, uncertainties.csv");
    exp_ov.attach(exp);
    exp->add_option("--approach", exp_approaches, "Comma-separated approaches");
    exp->add_option("--runs", exp_runs, "Runs per approach");
    exp->add_option("--threads", exp_threads, "Worker threads (output does not depend on it)");
    exp->add_flag("--traces", exp_traces, "Also write one trace CSV per run");
    exp->add_option("--out", exp_out, "Output directory");

    Overrides cal_ov;
    double cal_target = 2.52;
    auto* cal = app.add_subcommand("calibrate", "Fit k_num to the twin std target and check the plant oscillation");
    cal_ov.attach(cal);
    cal->add_option("--target", cal_target, "Twin box std at the end of the run (degC)");

    std::string sum_in;
    std::string sum_u;
    auto* sum = app.add_subcommand("summarize", "Statistics of |switch error| per approach");
    sum->add_option("--in", sum_in, "switch_errors.csv")->required()->check(CLI::ExistingFile);
    sum->add_option("--uncertainties", sum_u, "uncertainties.csv")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto cfg = run_ov.apply();
            if (!run_approach.empty()) {
                cfg.approach = dtsim::parse_approach(run_approach);
            }
            cfg.validate();
            dtsim::ExperimentResult result;
            result.runs.push_back(dtsim::run_scenario(cfg, run_id));
            dtsim::ExperimentOptions options;
            options.approaches = {cfg.approach};
            options.runs = 1;
            dtsim::write_experiment(result, cfg, options, run_out);
            const auto& r = result.runs.front();
            std::cout << fmt::format("{} run {}: {} switches, {} resets, final T_box {:.3f}", to_string(cfg.approach),
                                     run_id, r.switches.size(), r.resets, r.final_t_true);
            if (r.diverged_at) {
                std::cout << fmt::format(", diverged at {:.1f} s", *r.diverged_at);
            }
            std::cout << '\n';
        } else if (*exp) {
            auto cfg = exp_ov.apply();
            dtsim::ExperimentOptions options;
            options.approaches = dtsim::parse_approaches(exp_approaches);
            options.runs = exp_runs.value_or(cfg.runs);
            options.threads = exp_threads;
            options.keep_traces = exp_traces;
            const auto result = dtsim::run_experiment(cfg, options);
            dtsim::write_experiment(result, cfg, options, exp_out);
            print_summary_files(exp_out);
        } else if (*cal) {
            const auto cfg = cal_ov.apply();
            cfg.validate();
            const auto osc = dtsim::measure_oscillation(cfg);
            std::cout << "oscillation (measurand, classical control, nominal parameters)\n";
            if (osc.first_off) {
                std::cout << fmt::format("  first switch-off {:.1f} s, period {:.1f} s over {} cycles, range [{:.3f}, "
                                         "{:.3f}] degC: {}\n",
                                         *osc.first_off, osc.period, osc.cycles, osc.t_min, osc.t_max,
                                         dtsim::oscillation_ok(osc, cfg.band) ? "ok" : "NOT ok");
            } else {
                std::cout << "  the heater never switches off: NOT ok\n";
            }
            const auto fit = dtsim::fit_k_num(cfg, cal_target);
            std::cout << fmt::format("twin std at {:.0f} s with h = {}: {:.5f} without numerical error\n",
                                     cfg.duration, cfg.solver.h, fit.sigma_without);
            std::cout << fmt::format("solver.k_num = {:.10g}   # std {:.5f} after {} runs{}\n", fit.k_num, fit.sigma,
                                     fit.evaluations, fit.converged ? "" : " (NOT converged)");
            return fit.converged ? 0 : 1;
        } else if (*sum) {
            std::ifstream in(sum_in);
            const auto errors = dtsim::read_switch_errors(in);
            dtsim::write_summary(std::cout, dtsim::summarize(errors));
            if (!sum_u.empty()) {
                std::ifstream uin(sum_u);
                std::cout << '\n';
                dtsim::write_uncertainty_summary(std::cout, dtsim::summarize_uncertainties(dtsim::read_uncertainties(uin)));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
