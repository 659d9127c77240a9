#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cmedac {

// 1600-bit Keccak state: 5x5 lanes of 64 bits, lane (x,y) at lanes[x + 5*y].
// Byte serialization is the FIPS-202 string: lane-ordered, little-endian
// within each lane (byte index 8*(x + 5*y) + z).
struct KeccakState {
    std::array<uint64_t, 25> lanes{};

    uint64_t& lane(int x, int y) { return lanes[x + 5 * y]; }
    uint64_t lane(int x, int y) const { return lanes[x + 5 * y]; }

    std::array<uint8_t, 200> to_bytes() const;
    static KeccakState from_bytes(std::span<const uint8_t, 200> bytes);

    bool operator==(const KeccakState&) const = default;
};

struct SpongeParams {
    unsigned rate_bits;
    unsigned capacity_bits;
    unsigned rounds;
};

// SHA3-512: r = 576, c = 1024, 24 rounds.
inline constexpr SpongeParams kSha3_512Params{576, 1024, 24};

struct Digest512 {
    std::array<uint8_t, 64> bytes{};

    std::string to_hex() const;  // 128 lowercase hex chars
    static Digest512 from_hex(std::string_view hex);

    bool operator==(const Digest512&) const = default;
};

// Individual round steps, applied in place. Exposed so tests can probe each
// transform separately.
namespace keccak_steps {
void theta(KeccakState& s);
void rho(KeccakState& s);
void pi(KeccakState& s);
void chi(KeccakState& s);
void iota(KeccakState& s, unsigned round_index);
}  // namespace keccak_steps

extern const std::array<uint64_t, 24> kKeccakRoundConstants;

// One full round (theta, rho, pi, chi, iota); round_index in [0, 24).
void keccak_round(KeccakState& s, unsigned round_index);

// The 24-round Keccak-f[1600] permutation.
void keccak_f1600(KeccakState& s);

// Incremental SHA3-512 per FIPS-202 (suffix 01, pad10*1, rate 576 bits).
class Sha3_512 {
public:
    void update(std::span<const uint8_t> data);
    Digest512 finish();  // hasher must not be reused afterwards
    void reset();

private:
    static constexpr size_t kRateBytes = 72;
    KeccakState state_{};
    std::array<uint8_t, kRateBytes> buffer_{};
    size_t buffered_ = 0;

    void absorb_block(std::span<const uint8_t> block);
};

Digest512 sha3_512(std::span<const uint8_t> message);

// Eq.-style hash throughput in bits/second:
//   block_size * f_max / clock_cycles * n_msg
// Feeds the simulator's detection-latency model. Throws std::invalid_argument
// unless every argument is positive.
double detection_throughput(uint64_t block_size_bits, double f_max_hz,
                            uint64_t clock_cycles, uint64_t n_msg);

std::string bytes_to_hex(std::span<const uint8_t> bytes);
// Throws std::invalid_argument on odd length or non-hex characters.
std::vector<uint8_t> hex_to_bytes(std::string_view hex);

}  // namespace cmedac
