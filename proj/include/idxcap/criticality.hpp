#pragma once

#include <string>
#include <vector>

#include "idxcap/graph.hpp"

namespace idxcap {

enum class EdgeVerdict { Removable, CriticalCertified, Unknown };

struct EdgeClassification {
    int from = 0;
    int to = 0;
    bool on_cycle = false;
    bool in_unicycle = false;
    bool degraded = false;  // A_from subset of A_to
    EdgeVerdict verdict = EdgeVerdict::Unknown;
};

struct ProblemFlags {
    bool union_of_cycles = false;
    bool nondegraded = false;
    bool union_of_unicycles = false;
};

struct CriticalityReport {
    ProblemFlags flags;
    std::vector<EdgeClassification> edges;
};

// A vertex set S is a unicycle iff the subgraph induced on S has exactly |S|
// edges forming a single directed Hamiltonian cycle on S; size-2 unicycles
// are bidirectional pairs. n <= 16.
std::vector<std::uint32_t> enumerate_unicycles(const Digraph& g);
bool edge_in_unicycle(const Digraph& g, int i, int j);

// Same vertices, keeping exactly the edges that lie in some unicycle.
Digraph reduce_g_prime(const Digraph& g);

// True iff deleting edge i->j changes the family of maximal acyclic sets.
bool mais_region_shrinks(const Digraph& g, int i, int j);

// Per-edge classification plus problem-level flags.
CriticalityReport check_conditions(const Digraph& g);

const char* verdict_name(EdgeVerdict v);

}  // namespace idxcap
