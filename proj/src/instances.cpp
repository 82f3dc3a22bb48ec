#include "partsearch/instances.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "partsearch/rng.hpp"

namespace partsearch {

void GeneratorParams::validate() const {
    if (n < 1) throw std::invalid_argument("generator needs n >= 1");
    if (bits < 1 || bits > 64) throw std::invalid_argument("generator needs bits in [1, 64]");
    if (kind == Kind::Planted && n < 2) {
        throw std::invalid_argument("planted generator needs n >= 2");
    }
}

std::string GeneratorParams::describe() const {
    std::string s = kind == Kind::Planted ? "planted" : "uniform";
    s += " n=" + std::to_string(n) + " bits=" + std::to_string(bits) +
         " count=" + std::to_string(count) + " seed=" + std::to_string(seed);
    return s;
}

InstanceSet gen_uniform(const GeneratorParams& params) {
    if (params.kind != GeneratorParams::Kind::Uniform) {
        throw std::invalid_argument("gen_uniform called with non-uniform params");
    }
    params.validate();
    InstanceSet set;
    set.provenance = params.describe();
    set.instances.reserve(params.count);
    for (std::uint64_t i = 0; i < params.count; ++i) {
        SplitMix64 rng(mix_seed(params.seed, i));
        Instance inst;
        inst.id = "u" + std::to_string(params.seed) + "-" + std::to_string(i);
        inst.seed = params.seed;
        inst.omega.reserve(params.n);
        for (std::size_t j = 0; j < params.n; ++j) {
            inst.omega.emplace_back(rng.low_bits(params.bits));
        }
        set.instances.push_back(std::move(inst));
    }
    return set;
}

InstanceSet gen_planted(const GeneratorParams& params) {
    if (params.kind != GeneratorParams::Kind::Planted) {
        throw std::invalid_argument("gen_planted called with non-planted params");
    }
    params.validate();
    InstanceSet set;
    set.provenance = params.describe();
    set.instances.reserve(params.count);
    for (std::uint64_t i = 0; i < params.count; ++i) {
        SplitMix64 rng(mix_seed(params.seed, i));
        Instance inst;
        inst.id = "p" + std::to_string(params.seed) + "-" + std::to_string(i);
        inst.seed = params.seed;
        inst.label = true;
        inst.omega.reserve(params.n);
        for (std::size_t j = 0; j + 1 < params.n; ++j) {
            inst.omega.emplace_back(rng.low_bits(params.bits));
        }
        // Random sides for the first n-1 values; the last value closes the
        // gap exactly, so a perfect partition exists.  The side vector is
        // discarded: solvers must search for it.
        BigInt gap = 0;
        for (std::size_t j = 0; j + 1 < params.n; ++j) {
            if (rng.flip()) {
                gap += inst.omega[j];
            } else {
                gap -= inst.omega[j];
            }
        }
        if (gap < 0) gap = -gap;
        inst.omega.push_back(std::move(gap));
        set.instances.push_back(std::move(inst));
    }
    return set;
}

Instance paper_example() {
    Instance inst;
    inst.id = "paper-s2";
    inst.label = true;
    for (int v : {63, 48, 932, 266, 671, 47, 110, 82, 39}) inst.omega.emplace_back(v);
    return inst;
}

std::vector<BigInt> parse_omega(std::string_view text) {
    std::vector<BigInt> omega;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
        const std::string_view token = text.substr(pos, end - pos);
        BigInt value = parse_decimal(token);
        if (value < 0) {
            throw std::invalid_argument("negative value '" + std::string(token) +
                                        "' (values must be natural numbers)");
        }
        omega.push_back(std::move(value));
        pos = end;
    }
    return omega;
}

InstanceSet parse_instances(std::istream& in, std::string_view name) {
    InstanceSet set;
    set.provenance = std::string(name);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view = line;
        std::size_t first = view.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;  // blank
        if (view[first] == '#') continue;               // comment
        std::vector<BigInt> omega;
        try {
            omega = parse_omega(view);
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
        Instance inst;
        inst.id = std::string(name) + "-" + std::to_string(lineno);
        inst.omega = std::move(omega);
        inst.validate();
        set.instances.push_back(std::move(inst));
    }
    return set;
}

void write_instances(const InstanceSet& set, std::ostream& out) {
    for (const Instance& inst : set.instances) {
        for (std::size_t j = 0; j < inst.omega.size(); ++j) {
            if (j) out << ' ';
            out << inst.omega[j].str();
        }
        out << '\n';
    }
}

InstanceSet read_instances(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    return parse_instances(in, path.stem().string());
}

void write_instances(const InstanceSet& set, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    write_instances(set, out);
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

}  // namespace partsearch
