#include "cmedac/keccak.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace cmedac {

const std::array<uint64_t, 24> kKeccakRoundConstants = {
    0x0000000000000001ull, 0x0000000000008082ull, 0x800000000000808aull,
    0x8000000080008000ull, 0x000000000000808bull, 0x0000000080000001ull,
    0x8000000080008081ull, 0x8000000000008009ull, 0x000000000000008aull,
    0x0000000000000088ull, 0x0000000080008009ull, 0x000000008000000aull,
    0x000000008000808bull, 0x800000000000008bull, 0x8000000000008089ull,
    0x8000000000008003ull, 0x8000000000008002ull, 0x8000000000000080ull,
    0x000000000000800aull, 0x800000008000000aull, 0x8000000080008081ull,
    0x8000000000008080ull, 0x0000000080000001ull, 0x8000000080008008ull,
};

namespace {

// rho rotation amounts and pi lane cycle, in the order the state walk visits
// them (lane (1,0) first).
constexpr int kRho[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                          27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};
constexpr int kPi[24] = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                         15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

}  // namespace

std::array<uint8_t, 200> KeccakState::to_bytes() const {
    std::array<uint8_t, 200> out;
    for (int i = 0; i < 25; ++i) {
        uint64_t w = lanes[i];
        if constexpr (std::endian::native == std::endian::big) w = __builtin_bswap64(w);
        std::memcpy(out.data() + 8 * i, &w, 8);
    }
    return out;
}

KeccakState KeccakState::from_bytes(std::span<const uint8_t, 200> bytes) {
    KeccakState s;
    for (int i = 0; i < 25; ++i) {
        uint64_t w;
        std::memcpy(&w, bytes.data() + 8 * i, 8);
        if constexpr (std::endian::native == std::endian::big) w = __builtin_bswap64(w);
        s.lanes[i] = w;
    }
    return s;
}

namespace keccak_steps {

void theta(KeccakState& s) {
    uint64_t c[5], d[5];
    for (int x = 0; x < 5; ++x)
        c[x] = s.lanes[x] ^ s.lanes[x + 5] ^ s.lanes[x + 10] ^ s.lanes[x + 15] ^
               s.lanes[x + 20];
    for (int x = 0; x < 5; ++x)
        d[x] = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) s.lanes[x + 5 * y] ^= d[x];
}

void rho(KeccakState& s) {
    // Same rotation offsets as the fused rho+pi walk, applied lane-in-place.
    static constexpr int offsets[25] = {0,  1,  62, 28, 27, 36, 44, 6,  55,
                                        20, 3,  10, 43, 25, 39, 41, 45, 15,
                                        21, 8,  18, 2,  61, 56, 14};
    for (int i = 1; i < 25; ++i) s.lanes[i] = std::rotl(s.lanes[i], offsets[i]);
}

void pi(KeccakState& s) {
    // lane (x,y) moves to (y, 2x+3y)
    std::array<uint64_t, 25> t = s.lanes;
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            s.lanes[y + 5 * ((2 * x + 3 * y) % 5)] = t[x + 5 * y];
}

void chi(KeccakState& s) {
    for (int y = 0; y < 5; ++y) {
        uint64_t row[5];
        for (int x = 0; x < 5; ++x) row[x] = s.lanes[x + 5 * y];
        for (int x = 0; x < 5; ++x)
            s.lanes[x + 5 * y] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
    }
}

void iota(KeccakState& s, unsigned round_index) {
    s.lanes[0] ^= kKeccakRoundConstants.at(round_index);
}

}  // namespace keccak_steps

void keccak_round(KeccakState& s, unsigned round_index) {
    if (round_index >= 24) throw std::invalid_argument("keccak round index out of range");
    uint64_t c[5], d[5];

    // theta
    for (int x = 0; x < 5; ++x)
        c[x] = s.lanes[x] ^ s.lanes[x + 5] ^ s.lanes[x + 10] ^ s.lanes[x + 15] ^
               s.lanes[x + 20];
    for (int x = 0; x < 5; ++x)
        d[x] = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) s.lanes[x + 5 * y] ^= d[x];

    // rho + pi fused walk
    uint64_t last = s.lanes[1];
    for (int i = 0; i < 24; ++i) {
        uint64_t t = s.lanes[kPi[i]];
        s.lanes[kPi[i]] = std::rotl(last, kRho[i]);
        last = t;
    }

    // chi
    for (int y = 0; y < 5; ++y) {
        uint64_t row[5];
        for (int x = 0; x < 5; ++x) row[x] = s.lanes[x + 5 * y];
        for (int x = 0; x < 5; ++x)
            s.lanes[x + 5 * y] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
    }

    // iota
    s.lanes[0] ^= kKeccakRoundConstants[round_index];
}

void keccak_f1600(KeccakState& s) {
    for (unsigned r = 0; r < 24; ++r) keccak_round(s, r);
}

void Sha3_512::absorb_block(std::span<const uint8_t> block) {
    for (size_t i = 0; i < kRateBytes / 8; ++i) {
        uint64_t w;
        std::memcpy(&w, block.data() + 8 * i, 8);
        if constexpr (std::endian::native == std::endian::big) w = __builtin_bswap64(w);
        state_.lanes[i] ^= w;
    }
    keccak_f1600(state_);
}

void Sha3_512::update(std::span<const uint8_t> data) {
    size_t off = 0;
    if (buffered_ > 0) {
        size_t take = std::min(kRateBytes - buffered_, data.size());
        std::memcpy(buffer_.data() + buffered_, data.data(), take);
        buffered_ += take;
        off += take;
        if (buffered_ == kRateBytes) {
            absorb_block(buffer_);
            buffered_ = 0;
        }
    }
    while (data.size() - off >= kRateBytes) {
        absorb_block(data.subspan(off, kRateBytes));
        off += kRateBytes;
    }
    if (off < data.size()) {
        std::memcpy(buffer_.data(), data.data() + off, data.size() - off);
        buffered_ = data.size() - off;
    }
}

Digest512 Sha3_512::finish() {
    // domain suffix 01 then pad10*1, all within one rate block
    std::array<uint8_t, kRateBytes> block{};
    std::memcpy(block.data(), buffer_.data(), buffered_);
    block[buffered_] = 0x06;
    block[kRateBytes - 1] |= 0x80;
    absorb_block(block);

    Digest512 out;
    auto bytes = state_.to_bytes();
    std::memcpy(out.bytes.data(), bytes.data(), 64);
    return out;
}

void Sha3_512::reset() {
    state_ = KeccakState{};
    buffer_ = {};
    buffered_ = 0;
}

Digest512 sha3_512(std::span<const uint8_t> message) {
    Sha3_512 h;
    h.update(message);
    return h.finish();
}

double detection_throughput(uint64_t block_size_bits, double f_max_hz,
                            uint64_t clock_cycles, uint64_t n_msg) {
    if (clock_cycles == 0) throw std::invalid_argument("clock_cycles must be positive");
    if (block_size_bits == 0 || n_msg == 0 || !(f_max_hz > 0.0))
        throw std::invalid_argument("throughput arguments must be positive");
    return static_cast<double>(block_size_bits) * f_max_hz /
           static_cast<double>(clock_cycles) * static_cast<double>(n_msg);
}

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
}  // namespace

std::string bytes_to_hex(std::span<const uint8_t> bytes) {
    std::string out;
    out.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0xF]);
    }
    return out;
}

std::vector<uint8_t> hex_to_bytes(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd hex string length");
    std::vector<uint8_t> out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex character");
        out[i] = static_cast<uint8_t>(hi << 4 | lo);
    }
    return out;
}

std::string Digest512::to_hex() const { return bytes_to_hex(bytes); }

Digest512 Digest512::from_hex(std::string_view hex) {
    if (hex.size() != 128) throw std::invalid_argument("digest hex must be 128 chars");
    auto v = hex_to_bytes(hex);
    Digest512 d;
    std::memcpy(d.bytes.data(), v.data(), 64);
    return d;
}

}  // namespace cmedac
