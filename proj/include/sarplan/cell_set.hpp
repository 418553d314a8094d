#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sarplan {

// Fixed-capacity bitset over grid cell indices.
class CellSet {
  public:
    CellSet() = default;
    explicit CellSet(int cells) : words_((cells + 63) / 64, 0), size_(cells) {}

    int size() const { return size_; }

    void set(int i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int n = 0;
        for (uint64_t w : words_) n += std::popcount(w);
        return n;
    }

    // True when every bit of other is also set here.
    bool contains_all(const CellSet& other) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if ((other.words_[i] & ~words_[i]) != 0) return false;
        return true;
    }

    friend bool operator==(const CellSet&, const CellSet&) = default;

    size_t hash() const {
        size_t h = static_cast<size_t>(size_);
        for (uint64_t w : words_) h = h * 1099511628211ull ^ w;
        return h;
    }

  private:
    std::vector<uint64_t> words_;
    int size_ = 0;
};

} // namespace sarplan
