#include "idxcap/canonical.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace idxcap {

namespace {

// Color refinement: split color classes by (own color, out-neighbor color
// counts, in-neighbor color counts) until stable. Resulting colors are
// isomorphism-invariant, as is the order of the classes.
std::vector<int> refine(const Digraph& g, std::vector<int> colors) {
    const int n = g.n();
    while (true) {
        int ncolors = *std::max_element(colors.begin(), colors.end()) + 1;
        std::vector<std::vector<int>> sigs(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig(1 + 2 * ncolors, 0);
            sig[0] = colors[v];
            for (int w = 0; w < n; ++w) {
                if (g.has_edge(v, w)) ++sig[1 + colors[w]];
                if (g.has_edge(w, v)) ++sig[1 + ncolors + colors[w]];
            }
            sigs[v] = std::move(sig);
        }
        std::map<std::vector<int>, int> order;
        for (const auto& s : sigs) order.emplace(s, 0);
        int next = 0;
        for (auto& [sig, id] : order) id = next++;
        std::vector<int> fresh(n);
        for (int v = 0; v < n; ++v) fresh[v] = order[sigs[v]];
        if (fresh == colors) return colors;
        colors = std::move(fresh);
    }
}

struct Key {
    std::vector<std::uint64_t> words;

    bool operator<(const Key& o) const { return words < o.words; }
    bool operator==(const Key& o) const { return words == o.words; }
};

// Adjacency bit string under the ordering perm (position -> vertex), packed
// MSB-first so word-wise lexicographic compare matches bit-string compare.
Key build_key(const Digraph& g, const std::vector<int>& perm) {
    const int n = g.n();
    Key k;
    k.words.assign((static_cast<std::size_t>(n) * n + 63) / 64, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.has_edge(perm[i], perm[j])) {
                int bit = i * n + j;
                k.words[bit >> 6] |= 1ull << (63 - (bit & 63));
            }
    return k;
}

struct Search {
    const Digraph& g;
    Key best;
    std::vector<int> best_perm;
    bool have_best = false;

    void visit(const std::vector<int>& colors) {
        const int n = g.n();
        // find first non-singleton class
        std::vector<int> count(n, 0);
        for (int c : colors) ++count[c];
        int target = -1;
        for (int v = 0; v < n; ++v)
            if (count[colors[v]] > 1 && (target < 0 || colors[v] < target)) target = colors[v];
        if (target < 0) {
            // discrete: colors give the ordering directly
            std::vector<int> perm(n);
            for (int v = 0; v < n; ++v) perm[colors[v]] = v;
            Key k = build_key(g, perm);
            if (!have_best || k < best) {
                best = std::move(k);
                best_perm = std::move(perm);
                have_best = true;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (colors[v] != target) continue;
            std::vector<int> branched = colors;
            // individualize v ahead of the rest of its class
            for (int w = 0; w < n; ++w)
                if (branched[w] >= target && w != v) ++branched[w];
            visit(refine(g, std::move(branched)));
        }
    }
};

Search run_search(const Digraph& g) {
    Search s{g};
    s.visit(refine(g, std::vector<int>(g.n(), 0)));
    return s;
}

}  // namespace

CanonicalForm canonical_form(const Digraph& g) {
    Search s = run_search(g);
    return CanonicalForm{g.n(), std::move(s.best.words)};
}

Digraph canonical_graph(const Digraph& g) {
    Search s = run_search(g);
    Digraph c(g.n());
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (i != j && g.has_edge(s.best_perm[i], s.best_perm[j])) c.add_edge(i, j);
    return c;
}

std::uint64_t canonical_key64(const Digraph& g) {
    const int n = g.n();
    if (n > 7) throw std::invalid_argument("canonical_key64: supports up to 7 vertices");
    Search s = run_search(g);
    std::uint64_t adj = s.best.words.empty() ? 0 : (s.best.words[0] >> (64 - n * n));
    return (static_cast<std::uint64_t>(n) << 56) | adj;
}

}  // namespace idxcap
