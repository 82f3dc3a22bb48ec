#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partsearch/bigint.hpp"

namespace partsearch {

// One problem instance: the value array plus bookkeeping for reports.
// Values are non-negative and may repeat.
struct Instance {
    std::string id;
    std::vector<BigInt> omega;
    std::optional<std::uint64_t> seed;  // generation provenance
    std::optional<bool> label;          // known answer, when the construction proves one

    std::size_t size() const { return omega.size(); }

    BigInt total() const {
        BigInt sum = 0;
        for (const BigInt& w : omega) sum += w;
        return sum;
    }

    // Throws std::invalid_argument on an empty array or a negative value.
    void validate() const;
};

// Assignment of each element to the +1 or the -1 side.  Bit j set means
// element j sits on the +1 side.
class PartitionVector {
public:
    PartitionVector() = default;
    explicit PartitionVector(std::size_t n, bool fill = false) : bits_(n, fill) {}
    explicit PartitionVector(std::vector<bool> bits) : bits_(std::move(bits)) {}

    // Parses a '0'/'1' string, index 1 leftmost.
    static PartitionVector from_string(std::string_view text);

    std::size_t size() const { return bits_.size(); }
    bool test(std::size_t j) const { return bits_[j]; }
    void set(std::size_t j, bool v) { bits_[j] = v; }
    void flip(std::size_t j) { bits_[j] = !bits_[j]; }
    int sign(std::size_t j) const { return bits_[j] ? +1 : -1; }

    PartitionVector flipped(std::size_t j) const {
        PartitionVector out = *this;
        out.flip(j);
        return out;
    }

    PartitionVector complemented() const {
        PartitionVector out = *this;
        out.bits_.flip();
        return out;
    }

    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t j = 0; j < bits_.size(); ++j)
            if (bits_[j]) s[j] = '1';
        return s;
    }

    const std::vector<bool>& bits() const { return bits_; }

    bool operator==(const PartitionVector&) const = default;

private:
    std::vector<bool> bits_;
};

}  // namespace partsearch
