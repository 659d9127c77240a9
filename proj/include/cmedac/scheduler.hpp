#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cmedac {

// Directed edges producer -> dependent. Must be acyclic.
struct DependencyGraph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;
};

// Edge-list text file, one "producer dependent" pair per line.
DependencyGraph read_dependency_graph(const std::filesystem::path& path, int node_count);

// zeta(i) = |tasks that depend on i| / N. With transitive=true (the default)
// dependence is read through the whole DAG; otherwise only direct dependents
// count. Throws std::invalid_argument on cycles or out-of-range ids.
std::vector<double> criticality(const DependencyGraph& graph, bool transitive = true);

// Per-task phase clock and status register. exec/idle are E_i/t and I_i/t in
// whole cycles; the status register counts down to the next execution-phase
// start and reloads with (E+I)/t after reaching zero.
struct TaskTimingState {
    bool busy = true;
    uint64_t partial_exec = 0;  // PE: cycles since execution start
    uint64_t partial_idle = 0;  // PI: cycles since idle start
    uint64_t status = 0;        // St
    uint64_t exec_cycles = 1;   // E/t, >= 1
    uint64_t idle_cycles = 0;   // I/t

    uint64_t period() const { return exec_cycles + idle_cycles; }

    // Places the clock `offset` cycles into the period (execution first).
    static TaskTimingState at_phase(uint64_t exec_cycles, uint64_t idle_cycles,
                                    uint64_t offset);
};

// Loads the status register from the phase counters:
//   busy: St = (E/t - PE) + I/t      idle: St = I/t - PI
uint64_t init_status(TaskTimingState& s);

// One rising clock edge: reload the status register if it hit zero, else
// decrement; advance the phase counters across execution/idle boundaries.
void tick(TaskTimingState& s);

// Equivalent to `cycles` consecutive tick() calls.
void advance(TaskTimingState& s, uint64_t cycles);

// Execution-phase cycles the task would spend during the next `cycles`
// ticks, without changing the state.
uint64_t busy_cycles_during(const TaskTimingState& s, uint64_t cycles);

struct PrioritySpec {
    double w_a = 0.25, w_b = 0.25, w_c = 0.25, w_d = 0.0;  // user weights in [0,1]
    uint64_t frames_in_task = 1;   // eta_i
    uint64_t total_frames = 1;     // eta
    uint64_t correction_cycles = 0;  // EC_i / t
    uint64_t reconfig_cycles = 0;    // RT_i / t
    uint64_t detection_cycles = 0;   // ED_i / t (timing model only, not in FP)
};

// Residual slack P = St - (EC+RT)/t when the correction fits in the window;
// empty when the task must be deferred this round.
std::optional<uint64_t> priority(uint64_t status,
                                 uint64_t correction_plus_reconfig_cycles);

// FP = w_a*(1/P) + w_b*(eta_i/eta) + w_c*zeta + w_d*(E/t).
// P = 0 saturates the 1/P term at 1/0.5 so zero-slack tasks rank strictly
// most urgent on that term.
double final_priority(uint64_t p, const PrioritySpec& spec, double zeta,
                      uint64_t exec_cycles);

struct Candidate {
    int task = 0;
    double fp = 0.0;
    uint64_t status = 0;
};

// Largest FP wins; ties go to the smaller status register (EDF), then to the
// smaller task id. Empty input -> no selection.
std::optional<int> select(std::span<const Candidate> candidates);

}  // namespace cmedac
