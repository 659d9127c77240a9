#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmedac/cm_model.hpp"

namespace cmedac {

enum class CorrectionStatus { Clean, Corrected, Uncorrectable };

struct CorrectionOutcome {
    int task = 0;
    CorrectionStatus status = CorrectionStatus::Clean;
    std::optional<size_t> corrected_frame;
    uint32_t attempts = 0;        // candidate frames tried
    uint64_t frames_examined = 0; // frames read while locating + verifying
};

// Locate-and-fix for one task:
//   1. recompute the task's horizontal parity and every vertical parity
//   2. take the first row-major coordinate where horizontal parity disagrees
//   3. candidate frames = frame indices whose vertical parity disagrees there
//   4. XOR the full horizontal difference mask into each candidate in
//      ascending order; keep the first whose task digest matches the stored
//      one, reverting the mask otherwise
// A task whose parity and digest both match is Clean; anything the search
// cannot settle is Uncorrectable with the memory restored to its pre-call
// state.
CorrectionOutcome correct_task(ConfigMemory& mem, const GoldenStore& golden, size_t z);

// Runs correct_task over `order` (a scheduler-supplied permutation or subset
// of task ids). Each call recomputes vertical parities, so corrections made
// for earlier tasks are visible to later ones.
std::vector<CorrectionOutcome> correct_all(ConfigMemory& mem, const GoldenStore& golden,
                                           std::span<const int> order);

std::string correction_status_name(CorrectionStatus status);
std::string outcomes_to_json(std::span<const CorrectionOutcome> outcomes);

}  // namespace cmedac
