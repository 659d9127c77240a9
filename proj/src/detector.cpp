#include "cmedac/detector.hpp"

#include <sstream>
#include <stdexcept>

namespace cmedac {

Verdict verify_task(const ConfigMemory& mem, const GoldenStore& golden, size_t z) {
    if (!golden_shape_matches(golden, mem))
        throw std::invalid_argument("golden store does not match memory shape");
    if (z >= mem.task_count()) throw std::invalid_argument("task id out of range");
    return mem.task_digest(z) == golden.hashes[z] ? Verdict::Clean : Verdict::Faulty;
}

DetectionReport scan(const ConfigMemory& mem, const GoldenStore& golden,
                     const TimingModel& timing, Exec exec) {
    if (!golden_shape_matches(golden, mem))
        throw std::invalid_argument("golden store does not match memory shape");

    const long n_tasks = static_cast<long>(mem.task_count());
    std::vector<uint8_t> faulty(n_tasks, 0);

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long z = 0; z < n_tasks; ++z)
            faulty[z] = mem.task_digest(z) != golden.hashes[z];
    } else {
        for (long z = 0; z < n_tasks; ++z)
            faulty[z] = mem.task_digest(z) != golden.hashes[z];
    }

    DetectionReport report;
    for (long z = 0; z < n_tasks; ++z)
        if (faulty[z]) report.faulty_tasks.push_back(static_cast<int>(z));
    report.scan_cycles = mem.task_count() * timing.task_detect_cycles(
                                                mem.frames_per_task(), mem.task_bits());
    return report;
}

std::string DetectionReport::to_json() const {
    std::ostringstream os;
    os << "{\"faulty_tasks\":[";
    for (size_t i = 0; i < faulty_tasks.size(); ++i) {
        if (i) os << ",";
        os << faulty_tasks[i];
    }
    os << "],\"scan_cycles\":" << scan_cycles << "}";
    return os.str();
}

}  // namespace cmedac
