#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathlab {

// Deterministic RNG. mt19937_64 has a standardized sequence, but the standard
// distributions do not, so all draws go through our own bounded samplers.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // uniform integer in [0, bound) via rejection
    uint64_t below(uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do { x = eng_(); } while (x >= limit);
        return x % bound;
    }

    // uniform integer in [lo, hi] inclusive
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // uniform double in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool coin(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

// Stateless hash used for shared randomness: every node evaluating the same
// (seed, tag) pair sees the same value without consuming a stream.
inline uint64_t mix64(uint64_t seed, uint64_t tag) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline int bits_for(uint64_t max_value) {
    int b = 1;
    while ((max_value >> b) != 0) ++b;
    return b;
}

// ceil(log2(n)) for n >= 1; at least 1
inline int id_bits(int n) {
    if (n <= 2) return 1;
    int b = 0;
    uint64_t v = 1;
    while (v < static_cast<uint64_t>(n)) { v <<= 1; ++b; }
    return b;
}

class BitWriter {
public:
    void put(uint64_t value, int bits) {
        if (bits < 0 || bits > 64) throw std::invalid_argument("BitWriter::put: bad width");
        if (bits < 64 && (value >> bits) != 0)
            throw std::invalid_argument("BitWriter::put: value does not fit width");
        for (int i = bits - 1; i >= 0; --i) push_bit((value >> i) & 1);
    }
    size_t bit_size() const { return nbits_; }
    const std::vector<uint8_t>& bytes() const { return data_; }

private:
    void push_bit(uint64_t b) {
        if (nbits_ % 8 == 0) data_.push_back(0);
        if (b) data_.back() |= static_cast<uint8_t>(1u << (7 - nbits_ % 8));
        ++nbits_;
    }
    std::vector<uint8_t> data_;
    size_t nbits_ = 0;
};

class BitReader {
public:
    BitReader(const std::vector<uint8_t>& data, size_t nbits) : data_(data), nbits_(nbits) {}

    uint64_t get(int bits) {
        if (bits < 0 || bits > 64) throw std::runtime_error("BitReader::get: bad width");
        uint64_t v = 0;
        for (int i = 0; i < bits; ++i) {
            if (pos_ >= nbits_) throw std::runtime_error("BitReader: out of data");
            uint64_t b = (data_[pos_ / 8] >> (7 - pos_ % 8)) & 1;
            v = (v << 1) | b;
            ++pos_;
        }
        return v;
    }
    bool exhausted() const { return pos_ >= nbits_; }

private:
    const std::vector<uint8_t>& data_;
    size_t nbits_;
    size_t pos_ = 0;
};

} // namespace pathlab
