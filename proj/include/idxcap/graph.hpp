#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace idxcap {

// Directed side information graph. Edge i->j means receiver j has message i
// as side information. Vertices are 0-indexed internally, 1-indexed in the
// text format. Capped at 26 vertices; adjacency is one bit row per vertex
// (bit j of out_row(i) set iff edge i->j).
class Digraph {
public:
    static constexpr int kMaxVertices = 26;

    Digraph() = default;
    explicit Digraph(int n) : n_(n), out_(n, 0) {
        if (n < 1 || n > kMaxVertices) throw std::invalid_argument("Digraph: vertex count out of range");
    }

    int n() const { return n_; }

    bool has_edge(int i, int j) const { return (out_[i] >> j) & 1u; }
    void add_edge(int i, int j) {
        if (i == j) throw std::invalid_argument("Digraph: self-loop");
        out_[i] |= 1u << j;
    }
    void remove_edge(int i, int j) { out_[i] &= ~(1u << j); }

    std::uint32_t out_row(int i) const { return out_[i]; }
    std::uint32_t in_row(int j) const {
        std::uint32_t r = 0;
        for (int i = 0; i < n_; ++i) r |= ((out_[i] >> j) & 1u) << i;
        return r;
    }
    // Side information set A_j = in-neighbors of j.
    std::uint32_t side_info(int j) const { return in_row(j); }

    int edge_count() const;
    std::uint32_t full_mask() const { return (n_ == 32) ? ~0u : ((1u << n_) - 1); }

    bool operator==(const Digraph& o) const { return n_ == o.n_ && out_ == o.out_; }
    bool operator!=(const Digraph& o) const { return !(*this == o); }

private:
    int n_ = 0;
    std::vector<std::uint32_t> out_;
};

// Undirected graph with symmetric bit-row adjacency, up to 4096 vertices
// (confusion graphs at the size cap).
class UndirectedGraph {
public:
    static constexpr int kMaxVertices = 4096;

    UndirectedGraph() = default;
    explicit UndirectedGraph(int n);

    int n() const { return n_; }
    int words() const { return words_; }

    bool has_edge(int i, int j) const {
        return (rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void add_edge(int i, int j);
    void remove_edge(int i, int j);

    const std::uint64_t* row(int i) const { return rows_.data() + static_cast<std::size_t>(i) * words_; }
    std::uint64_t* row(int i) { return rows_.data() + static_cast<std::size_t>(i) * words_; }

    int degree(int i) const;
    int edge_count() const;

    bool operator==(const UndirectedGraph& o) const { return n_ == o.n_ && rows_ == o.rows_; }
    bool operator!=(const UndirectedGraph& o) const { return !(*this == o); }

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> rows_;
};

// Index coding instance: side information graph plus message lengths and
// alphabet size.
struct ProblemSpec {
    Digraph graph;
    std::vector<int> t;  // per-vertex message lengths, all >= 1
    int q = 2;           // alphabet size >= 2

    ProblemSpec() = default;
    explicit ProblemSpec(Digraph g, std::vector<int> lengths = {}, int alphabet = 2);
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses the "(1|2,3),(2|1),(3|1,2)" text format. "(j|-)" or "(j|)" denotes
// empty side information. Each j in [n] must appear exactly once.
Digraph parse_problem(const std::string& text);
std::string render_problem(const Digraph& g);

// Compact serialization "n:HEXROWS": row-major out-adjacency, each row padded
// to whole nibbles, bit for vertex 1 first (most significant within the row).
std::string to_hex(const Digraph& g);
Digraph from_hex(const std::string& s);

Digraph complement(const Digraph& g);
UndirectedGraph complement(const UndirectedGraph& u);
UndirectedGraph underlying(const Digraph& g);
Digraph induced(const Digraph& g, std::uint32_t vertex_set);
UndirectedGraph induced(const UndirectedGraph& u, const std::vector<int>& vertices);

bool is_bidirectional(const Digraph& g);
// For a bidirectional g, the same graph as an UndirectedGraph.
UndirectedGraph as_undirected(const Digraph& g);

Digraph lex_product(const Digraph& g, const Digraph& f);
Digraph generalized_lex(const Digraph& g0, const std::vector<Digraph>& parts);

UndirectedGraph disjunctive(const UndirectedGraph& u1, const UndirectedGraph& u2);
UndirectedGraph strong(const UndirectedGraph& u1, const UndirectedGraph& u2);
UndirectedGraph strong_power(const UndirectedGraph& u, int k);

std::vector<std::uint32_t> scc_decompose(const Digraph& g);
bool is_strongly_connected(const Digraph& g);
// True iff i and j lie in the same strongly connected component. Throws if
// the edge is not present.
bool edge_on_cycle(const Digraph& g, int i, int j);

// Acyclicity of the subgraph induced by vertex_set (mask over [0,n)).
bool is_acyclic(const Digraph& g, std::uint32_t vertex_set);
bool is_connected(const UndirectedGraph& u);

}  // namespace idxcap
