#include "cmedac/frame.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

#include "cmedac/keccak.hpp"

namespace cmedac {

void BitWriter::push_word_prefix(uint64_t word, unsigned nbits) {
    while (nbits > 0) {
        if (fill_ == 0) out_.push_back(0);
        unsigned take = std::min(8u - fill_, nbits);
        uint8_t chunk = static_cast<uint8_t>(word >> (64 - take));
        out_.back() |= uint8_t(chunk << (8 - fill_ - take));
        word <<= take;
        nbits -= take;
        fill_ = (fill_ + take) & 7;
    }
}

void Frame::xor_with(const Frame& other) {
    if (other.geo_ != geo_) throw std::invalid_argument("frame geometry mismatch");
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
}

bool Frame::is_zero() const {
    for (uint64_t w : words_)
        if (w != 0) return false;
    return true;
}

uint64_t Frame::popcount() const {
    uint64_t n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
}

void Frame::clear() { std::fill(words_.begin(), words_.end(), 0); }

void Frame::append_bytes(std::vector<uint8_t>& out) const {
    uint64_t nbytes = geo_.frame_bytes();
    size_t start = out.size();
    out.resize(start + nbytes);
    uint8_t* dst = out.data() + start;
    uint64_t full_words = nbytes / 8;
    for (uint64_t i = 0; i < full_words; ++i) {
        uint64_t w = words_[i];
        if constexpr (std::endian::native == std::endian::little) w = __builtin_bswap64(w);
        std::memcpy(dst + 8 * i, &w, 8);
    }
    for (uint64_t b = 8 * full_words; b < nbytes; ++b)
        dst[b] = static_cast<uint8_t>(words_[b / 8] >> (56 - 8 * (b % 8)));
}

void Frame::append_bits(BitWriter& w) const {
    uint64_t bits = geo_.frame_bits();
    if (w.byte_aligned() && bits % 8 == 0) {
        append_bytes(w.sink());
        return;
    }
    uint64_t full_words = bits / 64;
    for (uint64_t i = 0; i < full_words; ++i) w.push_word_prefix(words_[i], 64);
    if (bits % 64) w.push_word_prefix(words_[full_words], unsigned(bits % 64));
}

std::string Frame::to_hex() const {
    std::vector<uint8_t> bytes;
    append_bytes(bytes);
    return bytes_to_hex(bytes);
}

Frame Frame::from_hex(FrameGeometry g, std::string_view hex) {
    auto bytes = hex_to_bytes(hex);
    if (bytes.size() != g.frame_bytes())
        throw std::invalid_argument("frame hex length does not match geometry");
    Frame f(g);
    for (uint64_t b = 0; b < bytes.size(); ++b)
        f.words_[b / 8] |= uint64_t(bytes[b]) << (56 - 8 * (b % 8));
    // trailing pad bits must be zero
    uint64_t bits = g.frame_bits();
    if (bits % 8 != 0) {
        uint8_t tail = bytes.back() & uint8_t(0xFF >> (bits % 8));
        if (tail != 0) throw std::invalid_argument("nonzero padding bits in frame hex");
    }
    return f;
}

std::optional<Frame::Coord> Frame::first_diff(const Frame& other) const {
    if (other.geo_ != geo_) throw std::invalid_argument("frame geometry mismatch");
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t diff = words_[w] ^ other.words_[w];
        if (diff != 0) {
            uint64_t b = 64 * w + std::countl_zero(diff);
            return Coord{uint32_t(b / geo_.cols), uint32_t(b % geo_.cols)};
        }
    }
    return std::nullopt;
}

}  // namespace cmedac
