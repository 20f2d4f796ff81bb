// Copyright 2026 The swarmplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Scenario-simulation CLI. Exit codes: 0 success, 2 validation failure,
// 3 planning failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "swarmplan/io.hpp"
#include "swarmplan/replanner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitPlanning = 3;

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir = "out";
    std::int64_t seed = -1;
    int threads = 0;
};

swarmplan::Scenario load(const CommonOpts& opts) {
    swarmplan::Scenario sc = swarmplan::load_scenario(opts.scenario_path);
    if (opts.seed >= 0) {
        sc.planner.swarm.seed = static_cast<std::uint64_t>(opts.seed);
    }
    if (opts.threads > 0) sc.planner.swarm.threads = opts.threads;
    return sc;
}

void write_plan_files(const std::string& out_dir,
                      const swarmplan::PlanResult& plan) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream f(out_dir + "/trajectory.csv");
        swarmplan::write_trajectory_csv(f, plan.trajectory);
    }
    {
        std::ofstream f(out_dir + "/costs.csv");
        f << swarmplan::kCostTraceHeader << '\n';
        swarmplan::write_cost_trace_row(f, plan.cycle_index, 0.0, plan.costs);
    }
    {
        std::ofstream f(out_dir + "/stats.csv");
        f << swarmplan::kSwarmStatsHeader << '\n';
        swarmplan::write_swarm_stats(f, plan.cycle_index, plan.stats);
    }
}

int run_plan(const CommonOpts& opts) {
    const swarmplan::Scenario sc = load(opts);
    const swarmplan::PlanResult plan = swarmplan::plan_once(sc);
    write_plan_files(opts.out_dir, plan);
    std::cout << "planned 1 cycle: fitness "
              << swarmplan::format_double(plan.costs.total) << ", "
              << plan.stats.iterations << " iterations, "
              << swarmplan::format_double(plan.wall_time * 1e3) << " ms\n";
    return 0;
}

int run_simulate(const CommonOpts& opts, double duration, double rate,
                 double latency) {
    const swarmplan::Scenario sc = load(opts);
    swarmplan::CycleConfig cfg;
    cfg.replan_period = 1.0 / rate;
    cfg.pipeline_latency = latency;
    cfg.sim_duration = duration;
    const swarmplan::SimulationResult sim =
        swarmplan::run_simulation(sc, cfg, opts.out_dir);
    std::cout << "simulated " << sim.cycles.size() << " cycles -> "
              << opts.out_dir << '\n';
    if (sim.failed_cycle) {
        std::cerr << "planning failure at cycle " << *sim.failed_cycle << '\n';
        return kExitPlanning;
    }
    return 0;
}

int run_bench(const CommonOpts& opts, int cycles, double rate) {
    const swarmplan::Scenario sc = load(opts);
    swarmplan::CycleConfig cfg;
    cfg.replan_period = 1.0 / rate;
    cfg.sim_duration = cycles * cfg.replan_period;
    const swarmplan::SimulationResult sim = swarmplan::run_simulation(sc, cfg);
    if (sim.cycles.empty()) {
        std::cerr << "no cycles executed\n";
        return sim.failed_cycle ? kExitPlanning : kExitValidation;
    }
    std::vector<double> ms;
    ms.reserve(sim.cycles.size());
    for (const auto& c : sim.cycles) ms.push_back(c.wall_time * 1e3);
    std::sort(ms.begin(), ms.end());
    const auto at = [&](double q) {
        const std::size_t i = static_cast<std::size_t>(
            q * static_cast<double>(ms.size() - 1));
        return ms[i];
    };
    std::cout << "cycles: " << ms.size() << "\nmedian_ms: " << at(0.5)
              << "\np95_ms: " << at(0.95) << "\nmax_ms: " << ms.back()
              << '\n';
    if (sim.failed_cycle) {
        std::cerr << "planning failure at cycle " << *sim.failed_cycle << '\n';
        return kExitPlanning;
    }
    return 0;
}

int run_validate(const CommonOpts& opts) {
    swarmplan::load_scenario(opts.scenario_path);
    std::cout << opts.scenario_path << ": OK\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Particle-swarm trajectory planner and scenario simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    double duration = 10.0;
    double rate = 10.0;
    double latency = 0.02;
    int cycles = 50;

    auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("scenario", opts.scenario_path, "Scenario file")
            ->required();
        cmd->add_option("--seed", opts.seed, "Override the scenario seed");
        cmd->add_option("--threads", opts.threads, "Worker threads");
        if (with_out) {
            cmd->add_option("--out", opts.out_dir, "Output directory");
        }
    };

    CLI::App* plan = app.add_subcommand("plan", "Run one planning cycle");
    add_common(plan, true);

    CLI::App* simulate =
        app.add_subcommand("simulate", "Run the replanning loop");
    add_common(simulate, true);
    simulate->add_option("--duration", duration, "Simulated seconds");
    simulate->add_option("--rate", rate, "Replan frequency, Hz");
    simulate->add_option("--latency", latency, "Pipeline latency, s");

    CLI::App* bench = app.add_subcommand("bench", "Report cycle timings");
    add_common(bench, false);
    bench->add_option("--cycles", cycles, "Cycles to run");
    bench->add_option("--rate", rate, "Replan frequency, Hz");

    CLI::App* validate =
        app.add_subcommand("validate", "Parse and check a scenario");
    add_common(validate, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) return run_plan(opts);
        if (simulate->parsed()) {
            return run_simulate(opts, duration, rate, latency);
        }
        if (bench->parsed()) return run_bench(opts, cycles, rate);
        if (validate->parsed()) return run_validate(opts);
    } catch (const swarmplan::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const swarmplan::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const swarmplan::NoValidParticle& e) {
        std::cerr << "planning failure: " << e.what() << '\n';
        return kExitPlanning;
    } catch (const swarmplan::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
