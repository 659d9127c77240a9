#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cmedac/cm_model.hpp"

namespace cmedac {

enum class FaultKind { SingleBit, AdjacentBurst, RandomMulti };

// Reproducible upset generator. burst_length is the run length for
// adjacent bursts and doubles as flips-per-frame for random-multi.
struct FaultModel {
    FaultKind kind = FaultKind::AdjacentBurst;
    uint32_t burst_length = 1;
    uint32_t frames_per_task = 1;  // random-multi: faulty frames per task
    uint32_t tasks_affected = 1;   // random-multi: distinct tasks hit
    uint64_t seed = 0;
    bool allow_dummy = false;  // permit flips in padding frames
};

struct Flip {
    uint32_t task = 0, frame = 0, row = 0, col = 0;
    auto operator<=>(const Flip&) const = default;
};

// Sorted, duplicate-free set of bit coordinates.
struct FaultPattern {
    std::vector<Flip> flips;

    size_t distinct_frames() const;
    std::vector<int> faulty_tasks() const;  // ascending, unique
};

FaultPattern generate(const FaultModel& model, const ConfigMemory& mem);

// Toggles every listed bit. Applying the same pattern twice restores the
// memory.
void apply(const FaultPattern& pattern, ConfigMemory& mem);

// Replay format, one "task frame row col" line per flip.
void write_pattern(std::ostream& out, const FaultPattern& pattern);
FaultPattern read_pattern(std::istream& in);

std::string fault_kind_name(FaultKind kind);
FaultKind fault_kind_from_name(const std::string& name);

}  // namespace cmedac
