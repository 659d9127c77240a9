#include <doctest.h>

#include <set>

#include "cmedac/keccak.hpp"
#include "cmedac/rng.hpp"
#include "kat_loader.hpp"
#include "sha3_reference.hpp"

using namespace cmedac;

namespace {

std::vector<uint8_t> bytes_of(const char* s) {
    return {reinterpret_cast<const uint8_t*>(s),
            reinterpret_cast<const uint8_t*>(s) + std::string(s).size()};
}

// Keccak-f[1600] of the all-zero state, the long-published permutation
// known answer.
constexpr std::array<uint64_t, 25> kZeroStatePermuted = {
    0xF1258F7940E1DDE7ull, 0x84D5CCF933C0478Aull, 0xD598261EA65AA9EEull,
    0xBD1547306F80494Dull, 0x8B284E056253D057ull, 0xFF97A42D7F8E6FD4ull,
    0x90FEE5A0A44647C4ull, 0x8C5BDA0CD6192E76ull, 0xAD30A6F71B19059Cull,
    0x30935AB7D08FFC64ull, 0xEB5AA93F2317D635ull, 0xA9A6E6260D712103ull,
    0x81A57C16DBCF555Full, 0x43B831CD0347C826ull, 0x01F22F1A11A5569Full,
    0x05E5635A21D9AE61ull, 0x64BEFEF28CC970F2ull, 0x613670957BC46611ull,
    0xB87C5A554FD00ECBull, 0x8C3EE88A1CCF32C8ull, 0x940C7922AE3A2614ull,
    0x1841F924A2C509E4ull, 0x16F53526E70465C2ull, 0x75F644E97F30A13Bull,
    0xEAF1FF7B5CECA249ull,
};

KeccakState random_state(Rng& rng) {
    KeccakState s;
    for (auto& lane : s.lanes) lane = rng.next();
    return s;
}

sha3ref::State to_reference(const KeccakState& s) {
    auto bytes = s.to_bytes();
    return sha3ref::bits_to_state(
        sha3ref::bytes_to_bits({bytes.begin(), bytes.end()}));
}

KeccakState from_reference(const sha3ref::State& a) {
    auto bytes = sha3ref::bits_to_bytes(sha3ref::state_to_bits(a));
    std::array<uint8_t, 200> arr;
    std::copy(bytes.begin(), bytes.end(), arr.begin());
    return KeccakState::from_bytes(arr);
}

}  // namespace

TEST_CASE("permutation of the zero state matches the published vector") {
    KeccakState s;
    keccak_f1600(s);
    CHECK(s.lanes == kZeroStatePermuted);
}

TEST_CASE("state byte serialization round-trips") {
    Rng rng(11);
    for (int i = 0; i < 32; ++i) {
        KeccakState s = random_state(rng);
        CHECK(KeccakState::from_bytes(s.to_bytes()) == s);
    }
}

TEST_CASE("each round step agrees with the bit-level reference") {
    Rng rng(12);
    for (int trial = 0; trial < 8; ++trial) {
        KeccakState s = random_state(rng);
        sha3ref::State a = to_reference(s);

        SUBCASE("theta") {
            keccak_steps::theta(s);
            sha3ref::theta(a);
        }
        SUBCASE("rho") {
            keccak_steps::rho(s);
            sha3ref::rho(a);
        }
        SUBCASE("pi") {
            keccak_steps::pi(s);
            sha3ref::pi(a);
        }
        SUBCASE("chi") {
            keccak_steps::chi(s);
            sha3ref::chi(a);
        }
        SUBCASE("iota round 17") {
            keccak_steps::iota(s, 17);
            sha3ref::iota(a, 17);
        }
        CHECK(s == from_reference(a));
    }
}

TEST_CASE("steps composed in order equal the fused round") {
    Rng rng(13);
    for (unsigned round = 0; round < 24; ++round) {
        KeccakState fused = random_state(rng);
        KeccakState stepped = fused;
        keccak_round(fused, round);
        keccak_steps::theta(stepped);
        keccak_steps::rho(stepped);
        keccak_steps::pi(stepped);
        keccak_steps::chi(stepped);
        keccak_steps::iota(stepped, round);
        CHECK(fused == stepped);
    }
}

TEST_CASE("theta leaves states with even column parity unchanged") {
    Rng rng(14);
    for (int trial = 0; trial < 16; ++trial) {
        // force every column parity to zero: make y=4 the XOR of y=0..3
        KeccakState s = random_state(rng);
        for (int x = 0; x < 5; ++x)
            s.lane(x, 4) = s.lane(x, 0) ^ s.lane(x, 1) ^ s.lane(x, 2) ^ s.lane(x, 3);
        KeccakState before = s;
        keccak_steps::theta(s);
        CHECK(s == before);
    }
}

TEST_CASE("iota on round 0 only flips round-constant bits of lane (0,0)") {
    KeccakState s;
    keccak_steps::iota(s, 0);
    CHECK(s.lane(0, 0) == kKeccakRoundConstants[0]);
    for (int i = 1; i < 25; ++i) CHECK(s.lanes[i] == 0);
}

TEST_CASE("round index out of range is rejected") {
    KeccakState s;
    CHECK_THROWS_AS(keccak_round(s, 24), std::invalid_argument);
}

TEST_CASE("distinct states stay distinct through the permutation") {
    // spot check of bijectivity
    Rng rng(15);
    std::set<std::array<uint8_t, 200>> inputs, outputs;
    for (int i = 0; i < 128; ++i) {
        KeccakState s = random_state(rng);
        if (!inputs.insert(s.to_bytes()).second) continue;
        keccak_f1600(s);
        CHECK(outputs.insert(s.to_bytes()).second);
    }
}

TEST_CASE("sha3-512 known answers, short messages") {
    auto vectors = kat::load(std::string(CMEDAC_TEST_DATA_DIR) +
                             "/sha3_512_short_kat.txt");
    CHECK(vectors.size() == 256);
    for (const auto& v : vectors)
        CHECK(sha3_512(v.message).to_hex() == v.md_hex);
}

TEST_CASE("sha3-512 known answers, long messages") {
    auto vectors =
        kat::load(std::string(CMEDAC_TEST_DATA_DIR) + "/sha3_512_long_kat.txt");
    for (const auto& v : vectors)
        CHECK(sha3_512(v.message).to_hex() == v.md_hex);
}

TEST_CASE("sha3-512 published standard vectors") {
    CHECK(sha3_512({}).to_hex() ==
          "a69f73cca23a9ac5c8b567dc185a756e97c982164fe25859e0d1dcc1475c80a6"
          "15b2123af1f5f94c11e3e9402c3ac558f500199d95b6d3e301758586281dcd26");
    CHECK(sha3_512(bytes_of("abc")).to_hex() ==
          "b751850b1a57168a5693cd924b6b096e08f621827444f70d884f5d0240d2712e"
          "10e116e9192af3c91a7ec57647e3934057340b4cf408d5a56592f8274eec53f0");
    CHECK(sha3_512(bytes_of("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))
              .to_hex() ==
          "04a371e84ecfb5b8b77cb48610fca8182dd457ce6f326a0fd3d7ec2f1e91636d"
          "ee691fbe0c985302ba1b0d8dc78c086346b533b49c030d99a27daf1139d6e75e");
    CHECK(sha3_512(bytes_of("abcdefghbcdefghicdefghijdefghijkefghijklfghijklmghijklmn"
                            "hijklmnoijklmnopjklmnopqklmnopqrlmnopqrsmnopqrstnopqrstu"))
              .to_hex() ==
          "afebb2ef542e6579c50cad06d2e578f9f8dd6881d7dc824d26360feebf18a4fa"
          "73e3261122948efcfd492e74e82e2189ed0fb440d187f382270cb455f21dd185");
}

TEST_CASE("sha3-512 agrees with the bit-level reference on random messages") {
    Rng rng(16);
    for (int trial = 0; trial < 48; ++trial) {
        // lengths straddle the 72-byte rate boundary and multi-block sizes
        size_t len = trial < 24 ? rng.below(80) : rng.below(700);
        std::vector<uint8_t> msg(len);
        for (auto& b : msg) b = uint8_t(rng.next());
        CHECK(sha3_512(msg).bytes == sha3ref::sha3_512(msg));
    }
}

TEST_CASE("incremental hashing equals one-shot hashing across split points") {
    Rng rng(17);
    std::vector<uint8_t> msg(513);
    for (auto& b : msg) b = uint8_t(rng.next());
    Digest512 whole = sha3_512(msg);
    for (size_t split : {size_t(0), size_t(1), size_t(71), size_t(72), size_t(73),
                         size_t(144), size_t(512), size_t(513)}) {
        Sha3_512 h;
        h.update({msg.data(), split});
        h.update({msg.data() + split, msg.size() - split});
        CHECK(h.finish() == whole);
    }
}

TEST_CASE("single-bit flips always change the digest") {
    // sampled avalanche check backing the detector's no-miss claim
    Rng rng(18);
    int trials = 1200;
    for (int t = 0; t < trials; ++t) {
        size_t len = 1 + rng.below(96);
        std::vector<uint8_t> msg(len);
        for (auto& b : msg) b = uint8_t(rng.next());
        Digest512 base = sha3_512(msg);
        size_t bit = rng.below(len * 8);
        msg[bit / 8] ^= uint8_t(1u << (bit % 8));
        CHECK(sha3_512(msg) != base);
    }
}

TEST_CASE("message bytes only reach the rate portion of the state") {
    // capacity bytes (72..199) must be untouched before any permutation
    Rng rng(19);
    for (int trial = 0; trial < 8; ++trial) {
        KeccakState s = random_state(rng);
        auto before = s.to_bytes();
        std::array<uint8_t, 72> block;
        for (auto& b : block) b = uint8_t(rng.next());
        // emulate the absorb XOR without the permutation
        auto bytes = before;
        for (size_t i = 0; i < block.size(); ++i) bytes[i] ^= block[i];
        auto absorbed = KeccakState::from_bytes(bytes).to_bytes();
        for (size_t i = 72; i < 200; ++i) CHECK(absorbed[i] == before[i]);
    }
}

TEST_CASE("digest hex round-trip") {
    Rng rng(20);
    std::vector<uint8_t> msg(31);
    for (auto& b : msg) b = uint8_t(rng.next());
    Digest512 d = sha3_512(msg);
    CHECK(d.to_hex().size() == 128);
    CHECK(Digest512::from_hex(d.to_hex()) == d);
    CHECK_THROWS_AS(Digest512::from_hex("abc"), std::invalid_argument);
}

TEST_CASE("detection throughput formula") {
    // 576 bits, 344 MHz, 24 cycles, 2 parallel messages
    double bps = detection_throughput(576, 344e6, 24, 2);
    CHECK(bps == doctest::Approx(16.51e9).epsilon(0.001));
    CHECK(detection_throughput(576, 344e6, 24, 1) == doctest::Approx(bps / 2));
    CHECK(detection_throughput(576, 1.0, 576, 1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(detection_throughput(576, 344e6, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(detection_throughput(0, 344e6, 24, 2), std::invalid_argument);
    CHECK_THROWS_AS(detection_throughput(576, -1.0, 24, 2), std::invalid_argument);
}

TEST_CASE("sponge parameters") {
    CHECK(kSha3_512Params.rate_bits == 576);
    CHECK(kSha3_512Params.capacity_bits == 1024);
    CHECK(kSha3_512Params.rate_bits + kSha3_512Params.capacity_bits == 1600);
    CHECK(kSha3_512Params.rounds == 24);
}
