#include "cmedac/corrector.hpp"

#include <sstream>
#include <stdexcept>

namespace cmedac {

CorrectionOutcome correct_task(ConfigMemory& mem, const GoldenStore& golden, size_t z) {
    if (!golden_shape_matches(golden, mem))
        throw std::invalid_argument("golden store does not match memory shape");
    if (z >= mem.task_count()) throw std::invalid_argument("task id out of range");

    CorrectionOutcome outcome;
    outcome.task = static_cast<int>(z);

    const size_t n = mem.frames_per_task();
    Frame h_diff = mem.horizontal_parity(z);
    h_diff.xor_with(golden.hp[z]);
    outcome.frames_examined += n;

    if (h_diff.is_zero()) {
        // No horizontal syndrome. Either the task is pristine or flips in
        // different frames cancel row-wise; the digest settles it.
        outcome.status = mem.task_digest(z) == golden.hashes[z]
                             ? CorrectionStatus::Clean
                             : CorrectionStatus::Uncorrectable;
        return outcome;
    }

    const Frame::Coord at = *h_diff.first_diff(Frame(mem.geometry()));

    // Vertical parities localize the faulty frame: candidates are the frame
    // indices whose column-wise parity disagrees at the chosen coordinate.
    std::vector<size_t> candidates;
    for (size_t k = 0; k < n; ++k) {
        Frame v_diff = mem.vertical_parity(k);
        v_diff.xor_with(golden.vp[k]);
        if (v_diff.get(at.row, at.col)) candidates.push_back(k);
    }
    outcome.frames_examined += mem.total_frames();

    for (size_t k : candidates) {
        mem.frame(z, k).xor_with(h_diff);
        ++outcome.attempts;
        ++outcome.frames_examined;
        if (mem.task_digest(z) == golden.hashes[z]) {
            outcome.status = CorrectionStatus::Corrected;
            outcome.corrected_frame = k;
            return outcome;
        }
        mem.frame(z, k).xor_with(h_diff);  // revert the trial mask
    }

    outcome.status = CorrectionStatus::Uncorrectable;
    return outcome;
}

std::vector<CorrectionOutcome> correct_all(ConfigMemory& mem, const GoldenStore& golden,
                                           std::span<const int> order) {
    std::vector<CorrectionOutcome> outcomes;
    outcomes.reserve(order.size());
    for (int z : order) {
        if (z < 0 || static_cast<size_t>(z) >= mem.task_count())
            throw std::invalid_argument("correction order holds an invalid task id");
        outcomes.push_back(correct_task(mem, golden, static_cast<size_t>(z)));
    }
    return outcomes;
}

std::string correction_status_name(CorrectionStatus status) {
    switch (status) {
        case CorrectionStatus::Clean: return "clean";
        case CorrectionStatus::Corrected: return "corrected";
        case CorrectionStatus::Uncorrectable: return "uncorrectable";
    }
    return "?";
}

std::string outcomes_to_json(std::span<const CorrectionOutcome> outcomes) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        if (i) os << ",";
        os << "{\"task\":" << o.task << ",\"status\":\""
           << correction_status_name(o.status) << "\"";
        if (o.corrected_frame) os << ",\"corrected_frame\":" << *o.corrected_frame;
        os << ",\"attempts\":" << o.attempts << "}";
    }
    os << "]";
    return os.str();
}

}  // namespace cmedac
