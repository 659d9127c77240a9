// Command-line driver: golden-store management, fault injection, scans,
// corrections and full campaigns over a configuration-memory model.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cmedac/config.hpp"
#include "cmedac/corrector.hpp"
#include "cmedac/detector.hpp"
#include "cmedac/golden_io.hpp"
#include "cmedac/report.hpp"
#include "cmedac/rng.hpp"
#include "cmedac/sim_engine.hpp"

namespace fs = std::filesystem;
using namespace cmedac;

namespace {

constexpr int kExitConfig = 2;     // unreadable or inconsistent inputs
constexpr int kExitInvariant = 3;  // a mid-run consistency check failed

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> runs;
    std::string fault_model;
    std::string weights;  // "a,b,c,d"
    std::optional<bool> transitive;
    bool serial = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* c = cmd->add_option("--config", args.config_path, "campaign config file");
    if (config_required) c->required();
    cmd->add_option("--out", args.out_dir,
                    "output directory (default: $CMEDAC_OUT or .)");
    cmd->add_option("--seed", args.seed, "override campaign seed");
    cmd->add_option("--runs", args.runs, "override run count");
    cmd->add_option("--fault-model", args.fault_model,
                    "override fault model: single-bit, adjacent-burst, random-multi, none");
    cmd->add_option("--weights", args.weights, "override weights w_a,w_b,w_c,w_d");
    cmd->add_option("--transitive-criticality", args.transitive,
                    "criticality counts transitive dependents (default true)");
    cmd->add_flag("--serial", args.serial, "run the serial reference kernels");
}

fs::path resolve_out_dir(const CommonArgs& args) {
    fs::path dir;
    if (!args.out_dir.empty())
        dir = args.out_dir;
    else if (const char* env = std::getenv("CMEDAC_OUT"))
        dir = env;
    else
        dir = ".";
    fs::create_directories(dir);
    return dir;
}

FullConfig load_with_overrides(const CommonArgs& args) {
    FullConfig cfg = load_config(args.config_path);
    if (args.seed) cfg.campaign.seed = *args.seed;
    if (args.runs) cfg.campaign.runs = *args.runs;
    if (args.transitive) cfg.campaign.transitive_criticality = *args.transitive;
    if (!args.fault_model.empty()) {
        if (args.fault_model == "none") {
            cfg.fault.reset();
        } else {
            if (!cfg.fault) cfg.fault = FaultModel{};
            try {
                cfg.fault->kind = fault_kind_from_name(args.fault_model);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (!args.weights.empty()) {
        std::istringstream ws(args.weights);
        char sep = 0;
        if (!(ws >> cfg.weights.a >> sep >> cfg.weights.b >> sep >> cfg.weights.c >>
              sep >> cfg.weights.d))
            throw ConfigError("weights must be four comma-separated numbers");
        try {
            cfg.weights.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    return cfg;
}

Exec exec_mode(const CommonArgs& args) {
    return args.serial ? Exec::Serial : Exec::Parallel;
}

FaultPattern effective_pattern(const FullConfig& cfg, const Scenario& sc,
                               const std::string& pattern_path) {
    if (!pattern_path.empty()) {
        std::ifstream in(pattern_path);
        if (!in) throw ConfigError("cannot open pattern file: " + pattern_path);
        try {
            return read_pattern(in);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (!cfg.fault) return {};
    FaultModel fm = *cfg.fault;
    fm.seed = Rng::derive(cfg.campaign.seed, 0);
    return generate(fm, sc.memory);
}

int cmd_snapshot(const CommonArgs& args, const std::string& file_name) {
    FullConfig cfg = load_with_overrides(args);
    Scenario sc = build_scenario(cfg, exec_mode(args));
    fs::path path = resolve_out_dir(args) / file_name;
    write_golden_file(path, sc.golden);
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_inject(const CommonArgs& args, const std::string& file_name) {
    FullConfig cfg = load_with_overrides(args);
    if (!cfg.fault) throw ConfigError("config has no fault model to inject from");
    Scenario sc = build_scenario(cfg, exec_mode(args));
    FaultPattern pattern = effective_pattern(cfg, sc, "");
    fs::path path = resolve_out_dir(args) / file_name;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path.string());
    write_pattern(out, pattern);
    std::cout << "wrote " << path.string() << " (" << pattern.flips.size()
              << " flips)\n";
    return 0;
}

int cmd_scan(const CommonArgs& args, const std::string& pattern_path,
             const std::string& golden_path) {
    FullConfig cfg = load_with_overrides(args);
    Scenario sc = build_scenario(cfg, exec_mode(args));
    if (!golden_path.empty()) sc.golden = read_golden_file(golden_path);

    FaultPattern pattern = effective_pattern(cfg, sc, pattern_path);
    ConfigMemory mem = sc.memory;
    apply(pattern, mem);
    DetectionReport report = scan(mem, sc.golden, sc.timing, exec_mode(args));
    std::cout << report.to_json() << "\n";
    return 0;
}

int cmd_correct(const CommonArgs& args, const std::string& pattern_path,
                const std::string& golden_path) {
    FullConfig cfg = load_with_overrides(args);
    Scenario sc = build_scenario(cfg, exec_mode(args));
    if (!golden_path.empty()) sc.golden = read_golden_file(golden_path);

    FaultPattern pattern = effective_pattern(cfg, sc, pattern_path);
    ConfigMemory mem = sc.memory;
    apply(pattern, mem);
    DetectionReport report = scan(mem, sc.golden, sc.timing, exec_mode(args));

    // rank the faulty set once by final priority at post-scan time
    auto zeta = criticality(sc.deps, cfg.campaign.transitive_criticality);
    uint64_t eta = 0;
    for (size_t z = 0; z < mem.task_count(); ++z) eta += mem.task(z).real_count;
    std::vector<Candidate> candidates;
    for (int z : report.faulty_tasks) {
        const TaskImage& t = mem.task(z);
        TaskTimingState st =
            TaskTimingState::at_phase(t.exec_cycles, t.idle_cycles, t.phase_offset);
        PrioritySpec spec;
        spec.w_a = sc.weights.a;
        spec.w_b = sc.weights.b;
        spec.w_c = sc.weights.c;
        spec.w_d = sc.weights.d;
        spec.frames_in_task = t.real_count;
        spec.total_frames = eta ? eta : 1;
        uint64_t p = st.status;  // cost-free ranking when nothing is deferred
        candidates.push_back({z, final_priority(p, spec, zeta[z], t.exec_cycles),
                              st.status});
    }
    std::vector<int> order;
    while (!candidates.empty()) {
        int pick = *select(candidates);
        order.push_back(pick);
        candidates.erase(std::find_if(candidates.begin(), candidates.end(),
                                      [&](const Candidate& c) { return c.task == pick; }));
    }

    auto outcomes = correct_all(mem, sc.golden, order);
    std::cout << outcomes_to_json(outcomes) << "\n";
    return 0;
}

int cmd_campaign(const CommonArgs& args, bool baseline) {
    FullConfig cfg = load_with_overrides(args);
    Scenario sc = build_scenario(cfg, exec_mode(args));
    CampaignMetrics metrics = baseline ? run_scrub_baseline(sc, exec_mode(args))
                                       : run_campaign(sc, exec_mode(args));

    fs::path dir = resolve_out_dir(args);
    write_metrics_jsonl_file(dir / "metrics.jsonl", metrics);
    write_summary_csv_file(dir / "summary.csv", metrics);
    {
        std::ofstream red(dir / "redundancy_vs_tasks.dat");
        write_redundancy_curve(red, 2, 50, sc.memory.frames_per_task(),
                               sc.memory.geometry());
        std::ofstream lat(dir / "latency_vs_faults.dat");
        write_latency_curve(lat, metrics, sc.timing);
    }
    std::cout << render_report(metrics);
    std::cout << "artifacts in " << dir.string() << "\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& metric_files) {
    CampaignMetrics merged;
    bool first = true;
    for (const auto& path : metric_files) {
        CampaignMetrics m;
        try {
            m = read_metrics_jsonl_file(path);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());  // missing or damaged inputs -> exit 2
        }
        if (first) {
            merged = std::move(m);
            first = false;
        } else {
            merged.runs.insert(merged.runs.end(), m.runs.begin(), m.runs.end());
        }
    }
    std::cout << render_report(merged);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"configuration-memory error detection and correction simulator"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string pattern_path, golden_path;
    std::string golden_name = "golden.store";
    std::string pattern_name = "pattern.txt";
    std::vector<std::string> metric_files;

    auto* snapshot = app.add_subcommand(
        "snapshot", "compute and write the golden store (digests + parity)");
    add_common(snapshot, args);
    snapshot->add_option("--golden-out", golden_name, "golden store file name");

    auto* inject = app.add_subcommand("inject", "generate a fault pattern file");
    add_common(inject, args);
    inject->add_option("--pattern-out", pattern_name, "pattern file name");

    auto* scan_cmd =
        app.add_subcommand("scan", "inject (or replay) faults and report faulty tasks");
    add_common(scan_cmd, args);
    scan_cmd->add_option("--pattern", pattern_path, "replay a fault pattern file");
    scan_cmd->add_option("--golden", golden_path, "load the golden store from a file");

    auto* correct =
        app.add_subcommand("correct", "scan then correct faulty tasks in priority order");
    add_common(correct, args);
    correct->add_option("--pattern", pattern_path, "replay a fault pattern file");
    correct->add_option("--golden", golden_path, "load the golden store from a file");

    auto* campaign =
        app.add_subcommand("campaign", "run a fault-injection campaign with metrics");
    add_common(campaign, args);
    bool baseline_flag = false;
    campaign->add_flag("--baseline", baseline_flag,
                       "run the blind-scrubbing baseline instead");

    auto* baseline =
        app.add_subcommand("baseline", "run the blind-scrubbing baseline campaign");
    add_common(baseline, args);

    auto* report = app.add_subcommand("report", "aggregate metrics files");
    report->add_option("--metrics", metric_files, "metrics.jsonl files")
        ->required()
        ->expected(-1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (snapshot->parsed()) return cmd_snapshot(args, golden_name);
        if (inject->parsed()) return cmd_inject(args, pattern_name);
        if (scan_cmd->parsed()) return cmd_scan(args, pattern_path, golden_path);
        if (correct->parsed()) return cmd_correct(args, pattern_path, golden_path);
        if (campaign->parsed()) return cmd_campaign(args, baseline_flag);
        if (baseline->parsed()) return cmd_campaign(args, true);
        if (report->parsed()) return cmd_report(metric_files);
    } catch (const InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const GoldenFileError& e) {
        std::cerr << "golden store error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
