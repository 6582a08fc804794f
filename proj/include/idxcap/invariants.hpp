#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "idxcap/budget.hpp"
#include "idxcap/graph.hpp"
#include "idxcap/rational.hpp"

namespace idxcap {

// Independence number via branch and bound (max clique on the complement).
BoundedInt alpha(const UndirectedGraph& u, Budget* budget = nullptr);

// Clique number, computed as alpha of the complement.
BoundedInt omega(const UndirectedGraph& u, Budget* budget = nullptr);

// Chromatic number: DSATUR branch and bound with a clique lower bound.
BoundedInt chi(const UndirectedGraph& u, Budget* budget = nullptr);

// Fractional chromatic number, exact rational. The general path solves the
// covering LP over all maximal independent sets (cap 24 vertices); inputs
// known to be vertex transitive may use |V| / alpha at any size.
// Returns nullopt when the size cap is exceeded.
std::optional<Rational> chi_fractional(const UndirectedGraph& u, bool vertex_transitive = false,
                                       Budget* budget = nullptr);

// All maximal independent sets (Bron-Kerbosch on the complement).
std::vector<std::vector<int>> maximal_independent_sets(const UndirectedGraph& u);

struct MaisResult {
    int size = 0;
    std::uint32_t witness = 0;  // lexicographically smallest maximizing set
};

// Maximum acyclic induced subgraph, exact, with witness.
MaisResult mais(const Digraph& g);

// |V(g)| minus the minimum indegree.
int kappa(const Digraph& g);

// Directed Hamiltonian cycle existence, bitmask dynamic program (n <= 20).
bool is_hamiltonian(const Digraph& g);

// No induced odd hole and no induced odd antihole (|V| <= 16).
bool is_perfect(const UndirectedGraph& u);

// Automorphism group acts transitively on vertices (|V| <= 64).
bool is_vertex_transitive(const UndirectedGraph& u);

// Greedy coloring upper bound, used as the starting incumbent for chi.
int greedy_coloring(const UndirectedGraph& u);

}  // namespace idxcap
