#pragma once

// Test-only bit-level SHA3-512, written directly from the sponge/permutation
// definitions: state as 5x5x64 booleans, round constants generated by the
// degree-8 LFSR, rotation offsets computed from the (t+1)(t+2)/2 walk. Slow
// on purpose; it shares no tables or byte-twiddling with the library
// implementation it cross-checks.

#include <array>
#include <cstdint>
#include <vector>

namespace sha3ref {

using State = std::array<std::array<std::array<uint8_t, 64>, 5>, 5>;  // [x][y][z]

inline uint8_t lfsr_rc(unsigned t) {
    t %= 255;
    if (t == 0) return 1;
    // R starts as 10000000, shift in a zero and fold taps each step
    std::array<uint8_t, 8> r{1, 0, 0, 0, 0, 0, 0, 0};
    for (unsigned i = 1; i <= t; ++i) {
        uint8_t r8 = r[7];
        std::array<uint8_t, 8> next{};
        next[0] = uint8_t(0 ^ r8);
        for (int j = 1; j < 8; ++j) next[j] = r[j - 1];
        next[4] ^= r8;
        next[5] ^= r8;
        next[6] ^= r8;
        r = next;
    }
    return r[0];
}

inline void theta(State& a) {
    uint8_t c[5][64], d[5][64];
    for (int x = 0; x < 5; ++x)
        for (int z = 0; z < 64; ++z)
            c[x][z] =
                a[x][0][z] ^ a[x][1][z] ^ a[x][2][z] ^ a[x][3][z] ^ a[x][4][z];
    for (int x = 0; x < 5; ++x)
        for (int z = 0; z < 64; ++z)
            d[x][z] = c[(x + 4) % 5][z] ^ c[(x + 1) % 5][(z + 63) % 64];
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            for (int z = 0; z < 64; ++z) a[x][y][z] ^= d[x][z];
}

inline void rho(State& a) {
    State out = a;
    int x = 1, y = 0;
    for (int t = 0; t < 24; ++t) {
        int off = ((t + 1) * (t + 2) / 2) % 64;
        for (int z = 0; z < 64; ++z) out[x][y][z] = a[x][y][(z - off + 64 * 64) % 64];
        int nx = y, ny = (2 * x + 3 * y) % 5;
        x = nx;
        y = ny;
    }
    a = out;
}

inline void pi(State& a) {
    State out;
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) out[x][y] = a[(x + 3 * y) % 5][x];
    a = out;
}

inline void chi(State& a) {
    State out;
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            for (int z = 0; z < 64; ++z)
                out[x][y][z] =
                    a[x][y][z] ^ uint8_t((a[(x + 1) % 5][y][z] ^ 1) & a[(x + 2) % 5][y][z]);
    a = out;
}

inline void iota(State& a, unsigned round_index) {
    for (unsigned j = 0; j <= 6; ++j)
        a[0][0][(1u << j) - 1] ^= lfsr_rc(j + 7 * round_index);
}

inline void round_fn(State& a, unsigned ir) {
    theta(a);
    rho(a);
    pi(a);
    chi(a);
    iota(a, ir);
}

inline void permute(State& a) {
    for (unsigned ir = 0; ir < 24; ++ir) round_fn(a, ir);
}

// state <-> flat bit string, S[64*(5y + x) + z] = A[x][y][z]
inline std::vector<uint8_t> state_to_bits(const State& a) {
    std::vector<uint8_t> s(1600);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x)
            for (int z = 0; z < 64; ++z) s[64 * (5 * y + x) + z] = a[x][y][z];
    return s;
}

inline State bits_to_state(const std::vector<uint8_t>& s) {
    State a{};
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x)
            for (int z = 0; z < 64; ++z) a[x][y][z] = s[64 * (5 * y + x) + z];
    return a;
}

// bytes to bit string, LSB of each byte first
inline std::vector<uint8_t> bytes_to_bits(const std::vector<uint8_t>& bytes) {
    std::vector<uint8_t> bits(bytes.size() * 8);
    for (size_t i = 0; i < bytes.size(); ++i)
        for (int j = 0; j < 8; ++j) bits[8 * i + j] = (bytes[i] >> j) & 1;
    return bits;
}

inline std::vector<uint8_t> bits_to_bytes(const std::vector<uint8_t>& bits) {
    std::vector<uint8_t> bytes(bits.size() / 8, 0);
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) bytes[i / 8] |= uint8_t(1u << (i % 8));
    return bytes;
}

// SHA3-512(M) = Keccak[1024](M || 01, 512), rate 576 bits
inline std::array<uint8_t, 64> sha3_512(const std::vector<uint8_t>& message) {
    constexpr size_t rate = 576;
    std::vector<uint8_t> p = bytes_to_bits(message);
    p.push_back(0);  // domain suffix 01
    p.push_back(1);
    // pad10*1
    p.push_back(1);
    while (p.size() % rate != rate - 1) p.push_back(0);
    p.push_back(1);

    std::vector<uint8_t> s(1600, 0);
    for (size_t off = 0; off < p.size(); off += rate) {
        for (size_t i = 0; i < rate; ++i) s[i] ^= p[off + i];
        State a = bits_to_state(s);
        permute(a);
        s = state_to_bits(a);
    }
    std::vector<uint8_t> digest_bits(s.begin(), s.begin() + 512);
    auto bytes = bits_to_bytes(digest_bits);
    std::array<uint8_t, 64> out{};
    for (int i = 0; i < 64; ++i) out[i] = bytes[i];
    return out;
}

}  // namespace sha3ref
