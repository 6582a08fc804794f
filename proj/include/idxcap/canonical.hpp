#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "idxcap/graph.hpp"

namespace idxcap {

// Total-order key over isomorphism classes of digraphs: two digraphs share a
// cert iff they are isomorphic.
struct CanonicalForm {
    int n = 0;
    std::vector<std::uint64_t> bits;  // canonical adjacency, row-major

    auto operator<=>(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const Digraph& g);

// Canonical relabeling of g itself (adjacency matches canonical_form(g).bits).
Digraph canonical_graph(const Digraph& g);

// Compact key for n <= 7: n in the top byte, canonical adjacency below.
std::uint64_t canonical_key64(const Digraph& g);

}  // namespace idxcap
