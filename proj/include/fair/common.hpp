#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fair {

struct invalid_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dynamic bitset sized at construction. Vertex sets in hot loops live here;
// the public VertexSet type converts to and from it.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    void assign(int i, bool on) { on ? set(i) : reset(i); }
    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    int count() const;
    int and_count(const Bitset& o) const;
    bool intersects(const Bitset& o) const;
    bool is_subset_of(const Bitset& o) const;

    Bitset& operator|=(const Bitset& o);
    Bitset& operator&=(const Bitset& o);

    bool operator==(const Bitset& o) const = default;

    // Treats the bitset as a little-endian counter; returns false once the
    // value wraps back to all zeros (all subsets visited).
    bool next_subset();

    std::vector<int> to_vector() const;

private:
    int nbits_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace fair
