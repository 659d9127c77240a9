#include "cmedac/cm_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmedac {

ConfigMemory ConfigMemory::build(std::vector<TaskSpec> specs, FrameGeometry geometry) {
    if (specs.empty()) throw std::invalid_argument("memory needs at least one task");
    if (geometry.rows == 0 || geometry.cols == 0)
        throw std::invalid_argument("frame geometry must be at least 1x1");

    size_t n = 0;
    for (const auto& spec : specs) {
        for (const auto& f : spec.frames)
            if (f.geometry() != geometry)
                throw std::invalid_argument("task frame does not match memory geometry");
        if (spec.exec_cycles == 0)
            throw std::invalid_argument("exec_cycles must be >= 1");
        n = std::max(n, spec.frames.size());
    }
    if (n == 0) throw std::invalid_argument("no task provides any frame");

    ConfigMemory mem;
    mem.geo_ = geometry;
    mem.frames_per_task_ = n;
    mem.tasks_.reserve(specs.size());
    for (size_t z = 0; z < specs.size(); ++z) {
        TaskImage img;
        img.id = static_cast<int>(z);
        img.real_count = specs[z].frames.size();
        img.frames = std::move(specs[z].frames);
        img.frames.resize(n, Frame(geometry));  // dummy frames are all-zero
        img.exec_cycles = specs[z].exec_cycles;
        img.idle_cycles = specs[z].idle_cycles;
        img.phase_offset = specs[z].phase_offset;
        img.depends_on = std::move(specs[z].depends_on);
        mem.tasks_.push_back(std::move(img));
    }
    return mem;
}

void ConfigMemory::flip_bit(size_t z, size_t k, uint32_t row, uint32_t col) {
    if (z >= tasks_.size() || k >= frames_per_task_ || row >= geo_.rows ||
        col >= geo_.cols)
        throw std::invalid_argument("bit coordinate out of range");
    tasks_[z].frames[k].flip(row, col);
}

Frame ConfigMemory::horizontal_parity(size_t z) const {
    const TaskImage& t = tasks_.at(z);
    Frame acc(geo_);
    for (const Frame& f : t.frames) acc.xor_with(f);
    return acc;
}

Frame ConfigMemory::vertical_parity(size_t k) const {
    if (k >= frames_per_task_) throw std::invalid_argument("frame index out of range");
    Frame acc(geo_);
    for (const TaskImage& t : tasks_) acc.xor_with(t.frames[k]);
    return acc;
}

std::vector<uint8_t> ConfigMemory::serialize_task(size_t z) const {
    const TaskImage& t = tasks_.at(z);
    std::vector<uint8_t> out;
    out.reserve((task_bits() + 7) / 8);
    BitWriter w(out);
    for (const Frame& f : t.frames) f.append_bits(w);
    return out;
}

Digest512 ConfigMemory::task_digest(size_t z) const {
    const TaskImage& t = tasks_.at(z);
    if (geo_.frame_bits() % 8 == 0) {
        // frames land on byte boundaries: stream them through the hasher
        Sha3_512 h;
        thread_local std::vector<uint8_t> scratch;
        for (const Frame& f : t.frames) {
            scratch.clear();
            f.append_bytes(scratch);
            h.update(scratch);
        }
        return h.finish();
    }
    auto bytes = serialize_task(z);
    return sha3_512(bytes);
}

static void snapshot_task(const ConfigMemory& mem, GoldenStore& g, size_t z) {
    g.hashes[z] = mem.task_digest(z);
    g.hp[z] = mem.horizontal_parity(z);
}

GoldenStore snapshot_golden(const ConfigMemory& mem, Exec exec) {
    GoldenStore g;
    g.geometry = mem.geometry();
    const size_t n_tasks = mem.task_count();
    const size_t n_frames = mem.frames_per_task();
    g.hashes.resize(n_tasks);
    g.hp.resize(n_tasks);
    g.vp.resize(n_frames);

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long z = 0; z < static_cast<long>(n_tasks); ++z)
            snapshot_task(mem, g, static_cast<size_t>(z));
#pragma omp parallel for schedule(static)
        for (long k = 0; k < static_cast<long>(n_frames); ++k)
            g.vp[k] = mem.vertical_parity(static_cast<size_t>(k));
    } else {
        for (size_t z = 0; z < n_tasks; ++z) snapshot_task(mem, g, z);
        for (size_t k = 0; k < n_frames; ++k) g.vp[k] = mem.vertical_parity(k);
    }
    return g;
}

RedundancyBits redundancy_bits(uint64_t tasks, uint64_t frames_per_task,
                               FrameGeometry geometry) {
    const uint64_t fb = geometry.frame_bits();
    RedundancyBits r;
    r.detection_only = tasks * 512;
    r.proposed = tasks * 512 + tasks * fb + frames_per_task * fb;
    r.scrubbing = tasks * frames_per_task * fb;
    return r;
}

RedundancyBits redundancy_bits(const ConfigMemory& mem) {
    return redundancy_bits(mem.task_count(), mem.frames_per_task(), mem.geometry());
}

bool golden_shape_matches(const GoldenStore& golden, const ConfigMemory& mem) {
    return golden.geometry == mem.geometry() &&
           golden.hashes.size() == mem.task_count() &&
           golden.hp.size() == mem.task_count() &&
           golden.vp.size() == mem.frames_per_task();
}

}  // namespace cmedac
