#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "partsearch/instance.hpp"

namespace partsearch {

struct GeneratorParams {
    enum class Kind { Uniform, Planted };

    Kind kind = Kind::Uniform;
    std::size_t n = 0;
    unsigned bits = 0;  // each value uniform in [0, 2^bits - 1]
    std::uint64_t count = 0;
    std::uint64_t seed = 0;

    // n >= 1, bits in [1, 64]; planted additionally needs n >= 2.
    void validate() const;
    std::string describe() const;
};

struct InstanceSet {
    std::vector<Instance> instances;
    std::string provenance;

    std::size_t size() const { return instances.size(); }
    bool empty() const { return instances.empty(); }
};

// Values drawn independently and uniformly from [0, 2^bits - 1].  Instance i
// uses its own SplitMix64 stream seeded from (seed, i), so generating
// disjoint index ranges in parallel equals serial output.
InstanceSet gen_uniform(const GeneratorParams& params);

// Yes-instances by construction: n-1 uniform values get random sides and the
// last value closes the gap, so a perfect partition exists.  The planting
// sides are not stored; label = 1 is.
InstanceSet gen_planted(const GeneratorParams& params);

// The nine-element worked example, id "paper-s2", label 1.
Instance paper_example();

// Parse failure with the 1-based line it occurred on.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// One value list, single spaces: "63 48 932 266 671 47 110 82 39".
std::vector<BigInt> parse_omega(std::string_view text);

// Text corpus: one instance per line, decimal values separated by single
// spaces, '#' comment lines skipped, LF endings.  Canonical files round-trip
// byte for byte.
InstanceSet parse_instances(std::istream& in, std::string_view name);
void write_instances(const InstanceSet& set, std::ostream& out);

InstanceSet read_instances(const std::filesystem::path& path);
void write_instances(const InstanceSet& set, const std::filesystem::path& path);

}  // namespace partsearch
