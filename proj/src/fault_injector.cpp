#include "cmedac/fault_injector.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cmedac/rng.hpp"

namespace cmedac {

size_t FaultPattern::distinct_frames() const {
    std::set<std::pair<uint32_t, uint32_t>> frames;
    for (const Flip& f : flips) frames.insert({f.task, f.frame});
    return frames.size();
}

std::vector<int> FaultPattern::faulty_tasks() const {
    std::vector<int> out;
    for (const Flip& f : flips)
        if (out.empty() || out.back() != static_cast<int>(f.task))
            out.push_back(static_cast<int>(f.task));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Frames eligible for injection in task z; dummy frames only when allowed.
uint64_t frame_limit(const ConfigMemory& mem, size_t z, bool allow_dummy) {
    return allow_dummy ? mem.frames_per_task() : mem.task(z).real_count;
}

std::vector<uint32_t> eligible_tasks(const ConfigMemory& mem, bool allow_dummy) {
    std::vector<uint32_t> out;
    for (size_t z = 0; z < mem.task_count(); ++z)
        if (frame_limit(mem, z, allow_dummy) > 0) out.push_back(uint32_t(z));
    return out;
}

// k distinct values from [0, bound), order irrelevant (output sorted)
std::vector<uint32_t> sample_distinct(Rng& rng, uint64_t bound, uint32_t k) {
    std::set<uint32_t> picked;
    while (picked.size() < k) picked.insert(uint32_t(rng.below(bound)));
    return {picked.begin(), picked.end()};
}

void finalize(FaultPattern& p) {
    std::sort(p.flips.begin(), p.flips.end());
    p.flips.erase(std::unique(p.flips.begin(), p.flips.end()), p.flips.end());
}

}  // namespace

FaultPattern generate(const FaultModel& model, const ConfigMemory& mem) {
    const FrameGeometry geo = mem.geometry();
    Rng rng(model.seed);
    auto tasks = eligible_tasks(mem, model.allow_dummy);
    if (tasks.empty()) throw std::invalid_argument("no task eligible for injection");

    FaultPattern p;
    switch (model.kind) {
        case FaultKind::SingleBit: {
            uint32_t z = tasks[rng.below(tasks.size())];
            uint32_t k = uint32_t(rng.below(frame_limit(mem, z, model.allow_dummy)));
            uint32_t j = uint32_t(rng.below(geo.rows));
            uint32_t i = uint32_t(rng.below(geo.cols));
            p.flips.push_back({z, k, j, i});
            break;
        }
        case FaultKind::AdjacentBurst: {
            if (model.burst_length == 0 || model.burst_length > geo.cols)
                throw std::invalid_argument("burst longer than a frame row");
            uint32_t z = tasks[rng.below(tasks.size())];
            uint32_t k = uint32_t(rng.below(frame_limit(mem, z, model.allow_dummy)));
            uint32_t j = uint32_t(rng.below(geo.rows));
            uint32_t i0 = uint32_t(rng.below(geo.cols - model.burst_length + 1));
            for (uint32_t d = 0; d < model.burst_length; ++d)
                p.flips.push_back({z, k, j, i0 + d});
            break;
        }
        case FaultKind::RandomMulti: {
            if (model.tasks_affected == 0 || model.tasks_affected > tasks.size())
                throw std::invalid_argument("tasks_affected exceeds eligible tasks");
            if (model.frames_per_task == 0)
                throw std::invalid_argument("frames_per_task must be >= 1");
            if (model.burst_length == 0 || uint64_t(model.burst_length) > geo.frame_bits())
                throw std::invalid_argument("flips per frame exceed frame size");
            auto chosen = sample_distinct(rng, tasks.size(), model.tasks_affected);
            for (uint32_t idx : chosen) {
                uint32_t z = tasks[idx];
                uint64_t limit = frame_limit(mem, z, model.allow_dummy);
                if (model.frames_per_task > limit)
                    throw std::invalid_argument("frames_per_task exceeds task frames");
                auto frames = sample_distinct(rng, limit, model.frames_per_task);
                for (uint32_t k : frames) {
                    auto bits = sample_distinct(rng, geo.frame_bits(), model.burst_length);
                    for (uint32_t b : bits)
                        p.flips.push_back({z, k, b / geo.cols, b % geo.cols});
                }
            }
            break;
        }
    }
    finalize(p);
    return p;
}

void apply(const FaultPattern& pattern, ConfigMemory& mem) {
    const FrameGeometry geo = mem.geometry();
    for (const Flip& f : pattern.flips) {
        if (f.task >= mem.task_count() || f.frame >= mem.frames_per_task() ||
            f.row >= geo.rows || f.col >= geo.cols)
            throw std::invalid_argument("flip coordinate out of range");
    }
    for (const Flip& f : pattern.flips) mem.flip_bit(f.task, f.frame, f.row, f.col);
}

void write_pattern(std::ostream& out, const FaultPattern& pattern) {
    for (const Flip& f : pattern.flips)
        out << f.task << " " << f.frame << " " << f.row << " " << f.col << "\n";
}

FaultPattern read_pattern(std::istream& in) {
    FaultPattern p;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Flip f;
        if (!(ls >> f.task >> f.frame >> f.row >> f.col))
            throw std::invalid_argument("malformed fault pattern line: " + line);
        p.flips.push_back(f);
    }
    finalize(p);
    return p;
}

std::string fault_kind_name(FaultKind kind) {
    switch (kind) {
        case FaultKind::SingleBit: return "single-bit";
        case FaultKind::AdjacentBurst: return "adjacent-burst";
        case FaultKind::RandomMulti: return "random-multi";
    }
    return "?";
}

FaultKind fault_kind_from_name(const std::string& name) {
    if (name == "single-bit") return FaultKind::SingleBit;
    if (name == "adjacent-burst") return FaultKind::AdjacentBurst;
    if (name == "random-multi") return FaultKind::RandomMulti;
    throw std::invalid_argument("unknown fault model: " + name);
}

}  // namespace cmedac
