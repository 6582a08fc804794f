#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idxcap/graph.hpp"

namespace idxcap {

// A joint realization of all messages: vertex j holds a q-ary string of
// length t_j, stored as its integer value in [0, q^{t_j}). Tuples are
// enumerated in mixed radix with vertex 0 most significant.
struct MessageTuple {
    std::vector<int> digits;

    static MessageTuple from_index(const ProblemSpec& spec, std::int64_t index);
    std::int64_t index(const ProblemSpec& spec) const;

    // Symbol at position l (0-indexed, most significant first) of vertex j.
    int symbol(const ProblemSpec& spec, int j, int l) const;
};

// Number of message tuples, q^{sum t_j}.
std::int64_t tuple_count(const ProblemSpec& spec);

// True iff x and z differ at position l of vertex j while agreeing on every
// vertex in the side information set of j.
bool confusable_at(const MessageTuple& x, const MessageTuple& z, const ProblemSpec& spec, int j, int l);

// Graph on all message tuples whose edges are the confusable_at(j, l) pairs.
UndirectedGraph confusion_component(const ProblemSpec& spec, int j, int l);

// Edge union of every confusion component.
UndirectedGraph confusion_graph(const ProblemSpec& spec);

// Plain text edge list, one "u v" pair (0-indexed, u < v) per line.
std::string edge_list(const UndirectedGraph& u);

}  // namespace idxcap
