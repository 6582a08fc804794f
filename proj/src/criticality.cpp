#include "idxcap/criticality.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "idxcap/bounds.hpp"

namespace idxcap {

namespace {

// A set is a unicycle iff within it every vertex has in- and out-degree
// exactly 1 and the set is a single closed walk; the edge count then equals
// the set size, so chordlessness is automatic.
bool is_unicycle_set(const Digraph& g, std::uint32_t s) {
    int size = std::popcount(s);
    if (size < 2) return false;
    for (int v = 0; v < g.n(); ++v) {
        if (!((s >> v) & 1u)) continue;
        if (std::popcount(g.out_row(v) & s) != 1 || std::popcount(g.in_row(v) & s) != 1) return false;
    }
    // out-degrees all 1: a single cycle iff the walk from any start returns
    // after covering the whole set
    int start = std::countr_zero(s);
    int v = start, steps = 0;
    do {
        v = std::countr_zero(g.out_row(v) & s);
        ++steps;
    } while (v != start && steps <= size);
    return v == start && steps == size;
}

}  // namespace

std::vector<std::uint32_t> enumerate_unicycles(const Digraph& g) {
    if (g.n() > 16) throw std::invalid_argument("enumerate_unicycles: vertex cap exceeded");
    std::vector<std::uint32_t> out;
    std::uint32_t full = g.full_mask();
    for (std::uint32_t s = 3; s <= full; ++s)
        if (is_unicycle_set(g, s)) out.push_back(s);
    return out;
}

bool edge_in_unicycle(const Digraph& g, int i, int j) {
    if (!g.has_edge(i, j)) throw std::invalid_argument("edge_in_unicycle: edge not present");
    // a unicycle containing both endpoints necessarily uses the edge (its
    // induced subgraph has no edges outside the cycle)
    std::uint32_t need = (1u << i) | (1u << j);
    std::uint32_t full = g.full_mask();
    for (std::uint32_t s = need; s <= full; ++s)
        if ((s & need) == need && is_unicycle_set(g, s)) return true;
    return false;
}

Digraph reduce_g_prime(const Digraph& g) {
    if (g.n() > 16) throw std::invalid_argument("reduce_g_prime: vertex cap exceeded");
    Digraph out(g.n());
    for (std::uint32_t s : enumerate_unicycles(g))
        for (int i = 0; i < g.n(); ++i) {
            if (!((s >> i) & 1u)) continue;
            std::uint32_t row = g.out_row(i) & s;
            while (row) {
                int j = std::countr_zero(row);
                row &= row - 1;
                out.add_edge(i, j);
            }
        }
    return out;
}

namespace {

std::vector<std::uint32_t> maximal_acyclic_family(const Digraph& g) {
    std::uint32_t full = g.full_mask();
    std::vector<bool> acyclic(full + 1);
    for (std::uint32_t s = 0; s <= full; ++s) acyclic[s] = is_acyclic(g, s);
    std::vector<std::uint32_t> fam;
    for (std::uint32_t s = 1; s <= full; ++s) {
        if (!acyclic[s]) continue;
        bool maximal = true;
        for (int v = 0; v < g.n() && maximal; ++v)
            if (!((s >> v) & 1u) && acyclic[s | (1u << v)]) maximal = false;
        if (maximal) fam.push_back(s);
    }
    return fam;
}

}  // namespace

bool mais_region_shrinks(const Digraph& g, int i, int j) {
    if (g.n() > 16) throw std::invalid_argument("mais_region_shrinks: vertex cap exceeded");
    if (!g.has_edge(i, j)) throw std::invalid_argument("mais_region_shrinks: edge not present");
    Digraph h = g;
    h.remove_edge(i, j);
    return maximal_acyclic_family(g) != maximal_acyclic_family(h);
}

CriticalityReport check_conditions(const Digraph& g) {
    CriticalityReport rep;
    auto unicycles = g.n() <= 16 ? enumerate_unicycles(g) : std::vector<std::uint32_t>{};
    rep.flags.union_of_cycles = true;
    rep.flags.nondegraded = true;
    rep.flags.union_of_unicycles = true;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            if (!g.has_edge(i, j)) continue;
            EdgeClassification e;
            e.from = i;
            e.to = j;
            e.on_cycle = edge_on_cycle(g, i, j);
            std::uint32_t need = (1u << i) | (1u << j);
            for (std::uint32_t s : unicycles)
                if ((s & need) == need) {
                    e.in_unicycle = true;
                    break;
                }
            e.degraded = (g.side_info(i) & ~g.side_info(j)) == 0;
            rep.flags.union_of_cycles &= e.on_cycle;
            rep.flags.nondegraded &= !e.degraded;
            rep.flags.union_of_unicycles &= e.in_unicycle;
            if (!e.on_cycle || e.degraded) {
                e.verdict = EdgeVerdict::Removable;
            } else if (e.in_unicycle) {
                e.verdict = EdgeVerdict::CriticalCertified;
            } else {
                e.verdict = EdgeVerdict::Unknown;
                if (g.n() <= 8) {
                    Digraph h = g;
                    h.remove_edge(i, j);
                    if (region_capacity_certified(h)) e.verdict = EdgeVerdict::Removable;
                }
            }
            rep.edges.push_back(e);
        }
    return rep;
}

const char* verdict_name(EdgeVerdict v) {
    switch (v) {
        case EdgeVerdict::Removable: return "removable";
        case EdgeVerdict::CriticalCertified: return "critical_certified";
        default: return "unknown";
    }
}

}  // namespace idxcap
