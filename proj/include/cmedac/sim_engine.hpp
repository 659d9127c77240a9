#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cmedac/cm_model.hpp"
#include "cmedac/fault_injector.hpp"
#include "cmedac/parallel.hpp"
#include "cmedac/scheduler.hpp"
#include "cmedac/timing.hpp"

namespace cmedac {

// A mid-run consistency check failed; the simulation state can no longer be
// trusted.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Weights {
    double a = 0.25, b = 0.25, c = 0.25, d = 0.0;

    void validate() const;  // each weight must sit in [0,1]
};

enum class ScrubMode { Readback, Periodic };

struct CampaignOptions {
    uint64_t runs = 1;
    uint64_t seed = 0;
    ScrubMode scrub_mode = ScrubMode::Readback;
    uint64_t scrub_period = 0;  // cycles, Periodic mode only
    bool transitive_criticality = true;
    bool capture_port_trace = false;  // record download windows per run
};

// Everything one campaign needs, fully bound.
struct Scenario {
    ConfigMemory memory;  // pristine image
    GoldenStore golden;
    DependencyGraph deps;
    std::optional<FaultModel> fault;  // absent = no injection
    Weights weights;
    TimingModel timing;
    CampaignOptions campaign;
};

struct RunRecord {
    uint64_t run = 0;
    uint64_t seed = 0;
    uint64_t injected_flips = 0;
    uint64_t faulty_frames = 0;  // distinct (task, frame) pairs hit
    uint32_t faulty_tasks = 0;
    uint32_t corrected = 0;
    uint32_t uncorrectable = 0;
    uint32_t unschedulable = 0;  // uncorrectable because no slack window fits
    uint32_t clean_tasks = 0;
    uint32_t attempts = 0;
    uint64_t detection_cycles = 0;
    uint64_t correction_cycles = 0;
    uint64_t total_cycles = 0;
    uint64_t frames_downloaded = 0;
    uint64_t exposure_cycles = 0;  // execution cycles spent faulty
    bool memory_clean = false;

    bool operator==(const RunRecord&) const = default;
};

struct PortWindow {
    uint64_t begin = 0, end = 0;  // half-open cycle interval
    int task = -1;                // task whose frames were in flight
};

struct CampaignMetrics {
    std::vector<RunRecord> runs;
    RedundancyBits redundancy;
    uint64_t tasks = 0;
    uint64_t frames_per_task = 0;
    uint64_t total_frames = 0;
    // one trace per run when capture_port_trace is on
    std::vector<std::vector<PortWindow>> port_traces;
};

// Fig.-7-style closed loop per run: inject, scan, then drain the faulty set
// through the single download port in dynamic-priority order.
CampaignMetrics run_campaign(const Scenario& scenario, Exec exec = Exec::Parallel);

// Blind-scrubbing baseline: on detection (or period boundary) rewrite every
// frame from the golden image.
CampaignMetrics run_scrub_baseline(const Scenario& scenario, Exec exec = Exec::Parallel);

}  // namespace cmedac
