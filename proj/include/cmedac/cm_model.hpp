#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cmedac/frame.hpp"
#include "cmedac/keccak.hpp"
#include "cmedac/parallel.hpp"

namespace cmedac {

// Input description of one task before it is laid out in memory.
struct TaskSpec {
    std::vector<Frame> frames;  // real frames only
    uint64_t exec_cycles = 1;   // E_i / t
    uint64_t idle_cycles = 0;   // I_i / t
    uint64_t phase_offset = 0;  // position in the E+I period at sim start
    std::vector<int> depends_on;
};

// One task row in the memory, padded with all-zero dummy frames so that
// every row holds the same frame count.
struct TaskImage {
    int id = 0;
    std::vector<Frame> frames;
    size_t real_count = 0;
    uint64_t exec_cycles = 1;
    uint64_t idle_cycles = 0;
    uint64_t phase_offset = 0;
    std::vector<int> depends_on;

    bool operator==(const TaskImage&) const = default;
};

// Golden reference: per-task digest, per-task horizontal parity frame, and
// per-frame-index vertical parity frame.
struct GoldenStore {
    FrameGeometry geometry;
    std::vector<Digest512> hashes;  // one per task
    std::vector<Frame> hp;          // one per task (XOR over its frames)
    std::vector<Frame> vp;          // one per frame index (XOR across tasks)
};

struct RedundancyBits {
    uint64_t proposed = 0;        // N*512 + N*v*h + n*v*h
    uint64_t scrubbing = 0;       // U*v*h
    uint64_t detection_only = 0;  // N*512
};

// The configuration memory: N task rows of n frames each (U = N*n).
class ConfigMemory {
public:
    static ConfigMemory build(std::vector<TaskSpec> specs, FrameGeometry geometry);

    FrameGeometry geometry() const { return geo_; }
    size_t task_count() const { return tasks_.size(); }
    size_t frames_per_task() const { return frames_per_task_; }
    size_t total_frames() const { return tasks_.size() * frames_per_task_; }
    uint64_t task_bits() const { return frames_per_task_ * geo_.frame_bits(); }

    const TaskImage& task(size_t z) const { return tasks_.at(z); }
    TaskImage& task(size_t z) { return tasks_.at(z); }
    const Frame& frame(size_t z, size_t k) const { return tasks_.at(z).frames.at(k); }
    Frame& frame(size_t z, size_t k) { return tasks_.at(z).frames.at(k); }

    void flip_bit(size_t z, size_t k, uint32_t row, uint32_t col);

    // XOR of all n frames of task z.
    Frame horizontal_parity(size_t z) const;
    // XOR of frame k across all N tasks.
    Frame vertical_parity(size_t k) const;

    // Task bit stream for hashing: frames in order, rows top to bottom,
    // columns left to right, packed MSB-first; dummy frames included.
    std::vector<uint8_t> serialize_task(size_t z) const;
    Digest512 task_digest(size_t z) const;

    bool operator==(const ConfigMemory&) const = default;

private:
    FrameGeometry geo_{};
    size_t frames_per_task_ = 0;
    std::vector<TaskImage> tasks_;
};

GoldenStore snapshot_golden(const ConfigMemory& mem, Exec exec = Exec::Parallel);

RedundancyBits redundancy_bits(const ConfigMemory& mem);
// Closed-form variant used for the redundancy-vs-task-count curve.
RedundancyBits redundancy_bits(uint64_t tasks, uint64_t frames_per_task,
                               FrameGeometry geometry);

bool golden_shape_matches(const GoldenStore& golden, const ConfigMemory& mem);

}  // namespace cmedac
