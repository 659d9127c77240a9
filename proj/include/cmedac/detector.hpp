#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmedac/cm_model.hpp"
#include "cmedac/parallel.hpp"
#include "cmedac/timing.hpp"

namespace cmedac {

enum class Verdict { Clean, Faulty };

// Digest comparison for one task: faulty iff the recomputed signature
// differs from the stored one.
Verdict verify_task(const ConfigMemory& mem, const GoldenStore& golden, size_t z);

struct DetectionReport {
    std::vector<int> faulty_tasks;  // ascending task ids, no duplicates
    uint64_t scan_cycles = 0;

    std::string to_json() const;
};

// Read-back of every task followed by digest comparison. scan_cycles charges
// frame read-back plus hash time for all N tasks.
DetectionReport scan(const ConfigMemory& mem, const GoldenStore& golden,
                     const TimingModel& timing, Exec exec = Exec::Parallel);

}  // namespace cmedac
