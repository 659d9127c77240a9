#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cmedac {

// v rows by h columns, the shape every frame in one memory shares.
struct FrameGeometry {
    uint32_t rows = 0;  // v
    uint32_t cols = 0;  // h

    uint64_t frame_bits() const { return uint64_t(rows) * cols; }
    uint64_t frame_bytes() const { return (frame_bits() + 7) / 8; }

    bool operator==(const FrameGeometry&) const = default;
};

// Packs bits most-significant-bit first into a byte vector. Used for the
// task serialization fed to the hash.
class BitWriter {
public:
    explicit BitWriter(std::vector<uint8_t>& out) : out_(out) {}

    void push_bit(bool bit) {
        if (fill_ == 0) out_.push_back(0);
        if (bit) out_.back() |= uint8_t(1u << (7 - fill_));
        fill_ = (fill_ + 1) & 7;
    }

    // Appends the top `nbits` bits of `word` (bit 63 first).
    void push_word_prefix(uint64_t word, unsigned nbits);

    bool byte_aligned() const { return fill_ == 0; }
    std::vector<uint8_t>& sink() { return out_; }

private:
    std::vector<uint8_t>& out_;
    unsigned fill_ = 0;  // bits already used in the last byte
};

// One configuration frame: a v x h bit matrix. Bit (j,i) lives at linear
// index j*h + i; storage is 64-bit words with the linearly-first bit in the
// most significant position, so serialization is a straight big-endian store.
class Frame {
public:
    Frame() = default;
    explicit Frame(FrameGeometry g)
        : geo_(g), words_((g.frame_bits() + 63) / 64, 0) {}

    FrameGeometry geometry() const { return geo_; }

    bool get(uint32_t row, uint32_t col) const {
        uint64_t b = bit_index(row, col);
        return (words_[b >> 6] >> (63 - (b & 63))) & 1;
    }

    void set(uint32_t row, uint32_t col, bool value) {
        uint64_t b = bit_index(row, col);
        uint64_t mask = 1ull << (63 - (b & 63));
        if (value)
            words_[b >> 6] |= mask;
        else
            words_[b >> 6] &= ~mask;
    }

    void flip(uint32_t row, uint32_t col) {
        uint64_t b = bit_index(row, col);
        words_[b >> 6] ^= 1ull << (63 - (b & 63));
    }

    void xor_with(const Frame& other);

    bool is_zero() const;
    uint64_t popcount() const;
    void clear();

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }

    // Row-major MSB-first byte image, frame_bytes() long.
    void append_bytes(std::vector<uint8_t>& out) const;
    // Same bit stream through a writer that may start mid-byte.
    void append_bits(BitWriter& w) const;

    std::string to_hex() const;
    static Frame from_hex(FrameGeometry g, std::string_view hex);

    struct Coord {
        uint32_t row, col;
        bool operator==(const Coord&) const = default;
    };
    // First (row-major) bit where the two frames differ.
    std::optional<Coord> first_diff(const Frame& other) const;

    bool operator==(const Frame&) const = default;

private:
    uint64_t bit_index(uint32_t row, uint32_t col) const {
        return uint64_t(row) * geo_.cols + col;
    }

    FrameGeometry geo_{};
    std::vector<uint64_t> words_;
};

}  // namespace cmedac
