// Times the OpenMP kernels against their serial reference twins: golden
// snapshot, detection scan, and whole campaigns.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmedac/detector.hpp"
#include "cmedac/fault_injector.hpp"
#include "cmedac/parallel.hpp"
#include "cmedac/rng.hpp"
#include "cmedac/sim_engine.hpp"

using namespace cmedac;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

ConfigMemory build(size_t tasks, size_t frames, FrameGeometry geo, uint64_t seed) {
    Rng rng(seed);
    std::vector<TaskSpec> specs(tasks);
    for (auto& spec : specs) {
        spec.exec_cycles = 200000;
        spec.idle_cycles = 150000;
        for (size_t k = 0; k < frames; ++k) {
            Frame f(geo);
            for (auto& w : f.words()) w = rng.next();
            uint64_t bits = geo.frame_bits();
            if (bits % 64) f.words().back() &= ~0ull << (64 - bits % 64);
            spec.frames.push_back(std::move(f));
        }
    }
    return ConfigMemory::build(std::move(specs), geo);
}

struct Timed {
    double serial = 0, parallel = 0;
    bool consistent = true;
};

void print_row(const char* name, const Timed& t, int reps) {
    std::printf("%-18s %10.3f ms %10.3f ms %8.2fx   %s\n", name,
                1e3 * t.serial / reps, 1e3 * t.parallel / reps,
                t.parallel > 0 ? t.serial / t.parallel : 0.0,
                t.consistent ? "outputs match" : "OUTPUT MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    size_t tasks = 10, frames = 100;
    uint32_t rows = 101, cols = 32;
    int reps = 3;
    uint64_t runs = 200;
    app.add_option("--tasks", tasks);
    app.add_option("--frames", frames);
    app.add_option("--rows", rows);
    app.add_option("--cols", cols);
    app.add_option("--reps", reps, "repetitions per kernel");
    app.add_option("--runs", runs, "campaign runs for the campaign kernel");
    CLI11_PARSE(app, argc, argv);

    std::printf("memory: %zu tasks x %zu frames of %ux%u bits, %d thread(s)\n\n",
                tasks, frames, rows, cols, max_threads());
    std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    ConfigMemory mem = build(tasks, frames, {rows, cols}, 1);

    Timed snap;
    GoldenStore golden;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clock_type::now();
        GoldenStore s = snapshot_golden(mem, Exec::Serial);
        snap.serial += seconds_since(t0);
        t0 = clock_type::now();
        golden = snapshot_golden(mem, Exec::Parallel);
        snap.parallel += seconds_since(t0);
        snap.consistent &= s.hashes == golden.hashes && s.hp == golden.hp &&
                           s.vp == golden.vp;
    }
    print_row("snapshot", snap, reps);

    TimingModel timing;
    ConfigMemory faulty = mem;
    FaultModel fm{FaultKind::RandomMulti, 3, 1, std::min<uint32_t>(3, uint32_t(tasks)),
                  7, false};
    apply(generate(fm, faulty), faulty);

    Timed scan_t;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clock_type::now();
        auto s = scan(faulty, golden, timing, Exec::Serial);
        scan_t.serial += seconds_since(t0);
        t0 = clock_type::now();
        auto p = scan(faulty, golden, timing, Exec::Parallel);
        scan_t.parallel += seconds_since(t0);
        scan_t.consistent &= s.faulty_tasks == p.faulty_tasks;
    }
    print_row("scan", scan_t, reps);

    Scenario sc;
    sc.memory = std::move(mem);
    sc.golden = std::move(golden);
    sc.deps.node_count = int(tasks);
    sc.fault = fm;
    sc.campaign.runs = runs;
    sc.campaign.seed = 99;

    Timed camp;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clock_type::now();
        auto s = run_campaign(sc, Exec::Serial);
        camp.serial += seconds_since(t0);
        t0 = clock_type::now();
        auto p = run_campaign(sc, Exec::Parallel);
        camp.parallel += seconds_since(t0);
        camp.consistent &= s.runs == p.runs;
    }
    char label[32];
    std::snprintf(label, sizeof label, "campaign(%llu)",
                  static_cast<unsigned long long>(runs));
    print_row(label, camp, reps);
    return 0;
}
