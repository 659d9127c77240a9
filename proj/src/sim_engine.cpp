#include "cmedac/sim_engine.hpp"

#include <algorithm>

#include "cmedac/corrector.hpp"
#include "cmedac/detector.hpp"
#include "cmedac/rng.hpp"

namespace cmedac {

void Weights::validate() const {
    for (double w : {a, b, c, d})
        if (!(w >= 0.0 && w <= 1.0))
            throw std::invalid_argument("weights must lie in [0,1]");
}

namespace {

struct TaskCost {
    uint64_t correction = 0;  // EC_i estimate, cycles
    uint64_t reconfig = 0;    // RT_i, cycles
    uint64_t total() const { return correction + reconfig; }
};

// A-priori correction cost: one parity localization pass over the task row
// and the full memory, one mask application, one digest check.
TaskCost estimate_cost(const Scenario& sc) {
    const uint64_t n = sc.memory.frames_per_task();
    const uint64_t u = sc.memory.total_frames();
    TaskCost c;
    c.correction = sc.timing.ec_cycles_per_frame * (n + u + 1) +
                   sc.timing.hash_cycles(sc.memory.task_bits());
    c.reconfig = sc.timing.write_cycles_per_frame;  // one corrected frame
    return c;
}

void validate_scenario(const Scenario& sc) {
    sc.timing.validate();
    sc.weights.validate();
    if (sc.campaign.runs == 0) throw std::invalid_argument("campaign needs runs >= 1");
    if (!golden_shape_matches(sc.golden, sc.memory))
        throw std::invalid_argument("golden store does not match memory");
    if (sc.campaign.scrub_mode == ScrubMode::Periodic && sc.campaign.scrub_period == 0)
        throw std::invalid_argument("periodic scrubbing needs a scrub period");
    if (sc.deps.node_count != static_cast<int>(sc.memory.task_count()))
        throw std::invalid_argument("dependency graph size does not match task count");
    criticality(sc.deps, sc.campaign.transitive_criticality);  // validates the DAG
    if (sc.fault) {
        FaultModel probe = *sc.fault;
        probe.seed = Rng::derive(sc.campaign.seed, 0);
        generate(probe, sc.memory);  // dry run; throws on unrealizable models
    }
}

std::vector<TaskTimingState> initial_states(const ConfigMemory& mem) {
    std::vector<TaskTimingState> states;
    states.reserve(mem.task_count());
    for (size_t z = 0; z < mem.task_count(); ++z) {
        const TaskImage& t = mem.task(z);
        states.push_back(
            TaskTimingState::at_phase(t.exec_cycles, t.idle_cycles, t.phase_offset));
    }
    return states;
}

// Advance every listed task by `cycles`, crediting execution-phase time of
// still-faulty tasks to their exposure counters. `frozen` (or -1) is held
// still: a task's own download keeps it idle.
void elapse(std::vector<TaskTimingState>& states, const std::vector<int>& pending,
            uint64_t cycles, int frozen, uint64_t& exposure) {
    for (int z : pending)
        if (z != frozen) exposure += busy_cycles_during(states[z], cycles);
    for (size_t z = 0; z < states.size(); ++z)
        if (static_cast<int>(z) != frozen) advance(states[z], cycles);
}

RunRecord simulate_run(const Scenario& sc, const std::vector<double>& zeta,
                       uint64_t run_index, std::vector<PortWindow>* trace) {
    const size_t n_tasks = sc.memory.task_count();
    RunRecord rec;
    rec.run = run_index;
    rec.seed = Rng::derive(sc.campaign.seed, run_index);

    ConfigMemory mem = sc.memory;
    if (sc.fault) {
        FaultModel fm = *sc.fault;
        fm.seed = rec.seed;
        FaultPattern pattern = generate(fm, mem);
        apply(pattern, mem);
        rec.injected_flips = pattern.flips.size();
        rec.faulty_frames = pattern.distinct_frames();
    }

    std::vector<TaskTimingState> states = initial_states(mem);

    uint64_t now = 0;
    DetectionReport report = scan(mem, sc.golden, sc.timing, Exec::Serial);
    std::vector<int> pending = report.faulty_tasks;
    elapse(states, pending, report.scan_cycles, -1, rec.exposure_cycles);
    now += report.scan_cycles;
    rec.detection_cycles = report.scan_cycles;
    rec.faulty_tasks = static_cast<uint32_t>(pending.size());
    rec.clean_tasks = static_cast<uint32_t>(n_tasks - pending.size());

    const TaskCost cost = estimate_cost(sc);
    const uint64_t eta_total = [&] {
        uint64_t sum = 0;
        for (size_t z = 0; z < n_tasks; ++z) sum += mem.task(z).real_count;
        return sum ? sum : 1;
    }();

    // Tasks whose correction can never fit a slack window would defer
    // forever; mark them uncorrectable up front.
    for (auto it = pending.begin(); it != pending.end();) {
        if (cost.total() > states[*it].period()) {
            ++rec.uncorrectable;
            ++rec.unschedulable;
            it = pending.erase(it);
        } else {
            ++it;
        }
    }

    // load status registers for the faulty set
    for (int z : pending) init_status(states[z]);

    uint64_t drain_start = now;
    while (!pending.empty()) {
        std::vector<Candidate> candidates;
        candidates.reserve(pending.size());
        for (int z : pending) {
            auto p = priority(states[z].status, cost.total());
            if (!p) continue;  // deferred this round
            PrioritySpec spec;
            spec.w_a = sc.weights.a;
            spec.w_b = sc.weights.b;
            spec.w_c = sc.weights.c;
            spec.w_d = sc.weights.d;
            spec.frames_in_task = mem.task(z).real_count;
            spec.total_frames = eta_total;
            spec.correction_cycles = cost.correction;
            spec.reconfig_cycles = cost.reconfig;
            spec.detection_cycles =
                sc.timing.task_detect_cycles(mem.frames_per_task(), mem.task_bits());
            candidates.push_back(
                {z, final_priority(*p, spec, zeta[z], states[z].exec_cycles),
                 states[z].status});
        }

        auto choice = select(candidates);
        if (!choice) {
            // everyone deferred: wait a clock edge and re-evaluate
            elapse(states, pending, 1, -1, rec.exposure_cycles);
            now += 1;
            continue;
        }

        const int z = *choice;
        CorrectionOutcome outcome = correct_task(mem, sc.golden, size_t(z));
        rec.attempts += outcome.attempts;
        uint64_t downloaded = outcome.status == CorrectionStatus::Corrected ? 1 : 0;
        uint64_t window = sc.timing.ec_cycles_per_frame * outcome.frames_examined +
                          outcome.attempts * sc.timing.hash_cycles(mem.task_bits()) +
                          sc.timing.write_cycles_per_frame * downloaded;
        if (window == 0) window = 1;

        if (trace) trace->push_back({now, now + window, z});
        // the selected task is held idle while its PRR is rewritten
        elapse(states, pending, window, z, rec.exposure_cycles);
        now += window;

        rec.frames_downloaded += downloaded;
        if (outcome.status == CorrectionStatus::Corrected)
            ++rec.corrected;
        else
            ++rec.uncorrectable;
        pending.erase(std::find(pending.begin(), pending.end(), z));
    }
    rec.correction_cycles = now - drain_start;
    rec.total_cycles = now;
    rec.memory_clean = mem == sc.memory;

    if (rec.corrected + rec.uncorrectable + rec.clean_tasks != n_tasks)
        throw InvariantError("task outcome counts do not cover the memory");
    if (rec.uncorrectable == 0 && !rec.memory_clean)
        throw InvariantError("all corrections reported success but memory differs");
    return rec;
}

RunRecord simulate_scrub_run(const Scenario& sc, uint64_t run_index) {
    const size_t n_tasks = sc.memory.task_count();
    RunRecord rec;
    rec.run = run_index;
    rec.seed = Rng::derive(sc.campaign.seed, run_index);

    ConfigMemory mem = sc.memory;
    if (sc.fault) {
        FaultModel fm = *sc.fault;
        fm.seed = rec.seed;
        FaultPattern pattern = generate(fm, mem);
        apply(pattern, mem);
        rec.injected_flips = pattern.flips.size();
        rec.faulty_frames = pattern.distinct_frames();
    }

    std::vector<TaskTimingState> states = initial_states(mem);
    std::vector<int> faulty;

    uint64_t now = 0;
    if (sc.campaign.scrub_mode == ScrubMode::Readback) {
        DetectionReport report = scan(mem, sc.golden, sc.timing, Exec::Serial);
        faulty = report.faulty_tasks;
        elapse(states, faulty, report.scan_cycles, -1, rec.exposure_cycles);
        now += report.scan_cycles;
        rec.detection_cycles = report.scan_cycles;
    } else {
        // blind: wait for the next scrub boundary, no read-back
        for (size_t z = 0; z < n_tasks; ++z)
            if (verify_task(mem, sc.golden, z) == Verdict::Faulty)
                faulty.push_back(static_cast<int>(z));
        uint64_t wait = sc.campaign.scrub_period;
        elapse(states, faulty, wait, -1, rec.exposure_cycles);
        now += wait;
    }
    rec.faulty_tasks = static_cast<uint32_t>(faulty.size());
    rec.clean_tasks = static_cast<uint32_t>(n_tasks - faulty.size());

    const bool scrub_needed =
        sc.campaign.scrub_mode == ScrubMode::Periodic || !faulty.empty();
    if (scrub_needed) {
        // whole-image rewrite from the golden copy
        uint64_t window = sc.memory.total_frames() * sc.timing.write_cycles_per_frame;
        elapse(states, faulty, window, -1, rec.exposure_cycles);
        now += window;
        rec.correction_cycles = window;
        rec.frames_downloaded = sc.memory.total_frames();
        mem = sc.memory;
        rec.corrected = rec.faulty_tasks;
    }
    rec.total_cycles = now;
    rec.memory_clean = mem == sc.memory;
    return rec;
}

template <typename RunFn>
CampaignMetrics drive(const Scenario& sc, Exec exec, RunFn&& one_run) {
    validate_scenario(sc);
    CampaignMetrics m;
    m.tasks = sc.memory.task_count();
    m.frames_per_task = sc.memory.frames_per_task();
    m.total_frames = sc.memory.total_frames();
    m.redundancy = redundancy_bits(sc.memory);
    m.runs.resize(sc.campaign.runs);
    if (sc.campaign.capture_port_trace) m.port_traces.resize(sc.campaign.runs);

    const long runs = static_cast<long>(sc.campaign.runs);
    if (exec == Exec::Parallel) {
        std::exception_ptr failure;  // exceptions must not unwind across omp
#pragma omp parallel for schedule(dynamic)
        for (long r = 0; r < runs; ++r) {
            try {
                m.runs[r] = one_run(
                    uint64_t(r),
                    sc.campaign.capture_port_trace ? &m.port_traces[r] : nullptr);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (long r = 0; r < runs; ++r)
            m.runs[r] = one_run(
                uint64_t(r),
                sc.campaign.capture_port_trace ? &m.port_traces[r] : nullptr);
    }
    return m;
}

}  // namespace

CampaignMetrics run_campaign(const Scenario& scenario, Exec exec) {
    const std::vector<double> zeta =
        criticality(scenario.deps, scenario.campaign.transitive_criticality);
    return drive(scenario, exec, [&](uint64_t r, std::vector<PortWindow>* trace) {
        return simulate_run(scenario, zeta, r, trace);
    });
}

CampaignMetrics run_scrub_baseline(const Scenario& scenario, Exec exec) {
    return drive(scenario, exec, [&](uint64_t r, std::vector<PortWindow>*) {
        return simulate_scrub_run(scenario, r);
    });
}

}  // namespace cmedac
