#pragma once

#include <string>

#include "partsearch/bigint.hpp"
#include "partsearch/instance.hpp"

namespace partsearch {

// A cheap, re-checkable proof that no perfect partition exists.  In sound
// mode every "no" claim carries one of these, so the answer can be verified
// without consulting the brute-force oracle.
struct NoCertificate {
    enum class Kind { OddTotal, DominantElement, ExhaustedSpace };

    Kind kind;
    // OddTotal: the total sum.  DominantElement: the dominant 0-based index.
    // ExhaustedSpace: the number of vectors visited by the full traversal.
    BigInt detail;
    // ExhaustedSpace only: traversal covered one representative per
    // complement pair rather than all of the space.
    bool pruned = false;

    bool verify(const Instance& inst) const;
    std::string describe() const;
};

}  // namespace partsearch
