#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace cdtree {

// Fixed-width set of node ids backed by 64-bit words. Width is chosen at
// construction and all binary operations require matching widths.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int width) : width_(width), words_((width + 63) / 64, 0) {}

    int width() const { return width_; }

    bool test(int i) const {
        assert(i >= 0 && i < width_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(int i) {
        assert(i >= 0 && i < width_);
        words_[i >> 6] |= uint64_t{1} << (i & 63);
    }
    void reset(int i) {
        assert(i >= 0 && i < width_);
        words_[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }
    void clear() {
        for (auto& w : words_) w = 0;
    }

    Bitset& operator|=(const Bitset& o) {
        assert(o.width_ == width_);
        for (size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        assert(o.width_ == width_);
        for (size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    // this := this \ o
    Bitset& and_not(const Bitset& o) {
        assert(o.width_ == width_);
        for (size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool operator==(const Bitset& o) const { return width_ == o.width_ && words_ == o.words_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    // Calls f(i) for each set bit in ascending order.
    template <typename F>
    void for_each(F&& f) const {
        for (size_t k = 0; k < words_.size(); ++k) {
            uint64_t w = words_[k];
            while (w) {
                int bit = __builtin_ctzll(w);
                f(static_cast<int>(k * 64 + bit));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

private:
    int width_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace cdtree
