#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "cmedac/keccak.hpp"

namespace cmedac {

// Cycle cost model for read-back, hashing, correction and download.
struct TimingModel {
    double clock_period_s = 1.0 / 100e6;  // t
    uint64_t read_cycles_per_frame = 10;
    uint64_t write_cycles_per_frame = 10;
    uint64_t ec_cycles_per_frame = 1;  // per frame touched during correction

    // hash datapath parameters feeding the throughput formula
    uint64_t hash_block_bits = 576;
    uint64_t hash_clock_cycles = 24;
    uint64_t hash_n_msg = 2;
    double hash_fmax_hz = 344e6;

    void validate() const {
        if (!(clock_period_s > 0)) throw std::invalid_argument("clock period must be positive");
        if (read_cycles_per_frame == 0 || write_cycles_per_frame == 0 ||
            ec_cycles_per_frame == 0)
            throw std::invalid_argument("per-frame cycle costs must be positive");
        detection_throughput(hash_block_bits, hash_fmax_hz, hash_clock_cycles,
                             hash_n_msg);  // validates hash parameters
    }

    double hash_throughput_bps() const {
        return detection_throughput(hash_block_bits, hash_fmax_hz, hash_clock_cycles,
                                    hash_n_msg);
    }

    // Whole cycles to push `bits` through the hash datapath.
    uint64_t hash_cycles(uint64_t bits) const {
        double seconds = static_cast<double>(bits) / hash_throughput_bps();
        return static_cast<uint64_t>(std::ceil(seconds / clock_period_s));
    }

    // Read-back plus digest computation for one task.
    uint64_t task_detect_cycles(uint64_t frames, uint64_t task_bits) const {
        return frames * read_cycles_per_frame + hash_cycles(task_bits);
    }
};

}  // namespace cmedac
