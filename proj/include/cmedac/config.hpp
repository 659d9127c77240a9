#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmedac/sim_engine.hpp"

namespace cmedac {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TaskOverride {
    int id = 0;
    std::optional<uint64_t> frames;
    std::optional<uint64_t> exec_cycles;
    std::optional<uint64_t> idle_cycles;
    std::optional<uint64_t> phase;
};

enum class FillKind { Zero, Random };

struct MemorySpec {
    uint64_t tasks = 1;
    uint64_t frames_per_task = 1;
    FrameGeometry geometry{101, 32};
    FillKind fill = FillKind::Random;
    uint64_t content_seed = 1;
    uint64_t default_exec = 1000;
    uint64_t default_idle = 1000;
    std::vector<TaskOverride> overrides;
    std::vector<std::pair<int, int>> dep_edges;        // inline "dep a b" lines
    std::optional<std::filesystem::path> deps_file;    // edge-list file
};

// Parsed image of one campaign configuration document.
struct FullConfig {
    MemorySpec memory;
    std::optional<FaultModel> fault;
    Weights weights;
    TimingModel timing;
    CampaignOptions campaign;
};

// Sectioned key-value text:
//   [memory] tasks, frames_per_task, rows, cols, fill, content_seed,
//            default_exec[_s], default_idle[_s]
//   [tasks]  task <id> key=value..., dep <producer> <dependent>, deps_file
//   [faults] model, burst_length, frames_per_task, tasks_affected, allow_dummy
//   [weights] w_a..w_d
//   [timing] clock_mhz | clock_period_ns, read/write/ec_cycles_per_frame,
//            hash_block_bits, hash_clock_cycles, hash_n_msg, hash_fmax_mhz
//   [campaign] runs, seed, scrub_mode, scrub_period, transitive_criticality
// Unknown keys, malformed values, weights outside [0,1] and cyclic
// dependency graphs are rejected with ConfigError.
FullConfig parse_config(std::istream& in,
                        const std::filesystem::path& base_dir = ".");
FullConfig load_config(const std::filesystem::path& path);

// Instantiates memory content (seeded fill), dependency graph and golden
// snapshot for the engine.
ConfigMemory build_memory(const MemorySpec& spec);
DependencyGraph build_dependency_graph(const MemorySpec& spec);
Scenario build_scenario(const FullConfig& config, Exec exec = Exec::Parallel);

}  // namespace cmedac
