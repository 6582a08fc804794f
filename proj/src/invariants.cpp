#include "idxcap/invariants.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "idxcap/lp.hpp"

namespace idxcap {

namespace {

// ---- max clique branch and bound (Tomita-style coloring bound) ----

struct CliqueSolver {
    const UndirectedGraph& g;
    Budget& budget;
    int best = 0;
    bool complete = true;

    // Greedy coloring of the candidate list; returns per-vertex color count
    // bound with candidates reordered so bounds are nondecreasing.
    static void color_sort(const UndirectedGraph& g, std::vector<int>& cand, std::vector<int>& bound) {
        std::vector<std::vector<int>> classes;
        for (int v : cand) {
            bool placed = false;
            for (auto& cls : classes) {
                bool conflict = false;
                for (int u : cls)
                    if (g.has_edge(u, v)) {
                        conflict = true;
                        break;
                    }
                if (!conflict) {
                    cls.push_back(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) classes.push_back({v});
        }
        cand.clear();
        bound.clear();
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (int v : classes[c]) {
                cand.push_back(v);
                bound.push_back(static_cast<int>(c) + 1);
            }
    }

    void expand(int depth, std::vector<int> cand) {
        if (!budget.tick()) {
            complete = false;
            return;
        }
        std::vector<int> bound;
        color_sort(g, cand, bound);
        for (int i = static_cast<int>(cand.size()) - 1; i >= 0; --i) {
            if (depth + bound[i] <= best) return;
            int v = cand[i];
            std::vector<int> next;
            for (int k = 0; k < i; ++k)
                if (g.has_edge(v, cand[k])) next.push_back(cand[k]);
            if (next.empty()) {
                best = std::max(best, depth + 1);
            } else {
                expand(depth + 1, std::move(next));
                if (!complete) return;
            }
        }
    }
};

BoundedInt max_clique(const UndirectedGraph& g, Budget* budget) {
    Budget local;
    Budget& b = budget ? *budget : local;
    CliqueSolver solver{g, b};
    std::vector<int> all(g.n());
    for (int v = 0; v < g.n(); ++v) all[v] = v;
    // root coloring gives an upper bound even if the search is cut short
    std::vector<int> cand = all, bounds;
    CliqueSolver::color_sort(g, cand, bounds);
    int root_bound = bounds.empty() ? 0 : bounds.back();
    solver.expand(0, all);
    if (solver.complete) return {solver.best, solver.best};
    return {solver.best, root_bound};
}

}  // namespace

BoundedInt alpha(const UndirectedGraph& u, Budget* budget) { return max_clique(complement(u), budget); }

BoundedInt omega(const UndirectedGraph& u, Budget* budget) { return max_clique(u, budget); }

int greedy_coloring(const UndirectedGraph& u) {
    std::vector<int> order(u.n());
    for (int v = 0; v < u.n(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return u.degree(a) > u.degree(b); });
    std::vector<int> color(u.n(), -1);
    int used = 0;
    for (int v : order) {
        std::uint64_t taken = 0;  // colors fit in 64 bits only for small counts
        std::vector<bool> big_taken;
        if (used > 64) big_taken.assign(used, false);
        for (int w = 0; w < u.n(); ++w)
            if (color[w] >= 0 && u.has_edge(v, w)) {
                if (used > 64)
                    big_taken[color[w]] = true;
                else
                    taken |= 1ull << color[w];
            }
        int c = 0;
        if (used > 64) {
            while (c < used && big_taken[c]) ++c;
        } else {
            while (c < used && ((taken >> c) & 1u)) ++c;
        }
        color[v] = c;
        used = std::max(used, c + 1);
    }
    return used;
}

namespace {

// ---- DSATUR exact coloring ----

struct ChiSolver {
    const UndirectedGraph& g;
    Budget& budget;
    int best;  // incumbent upper bound (a valid coloring with best colors exists)
    int lower;
    bool complete = true;
    std::vector<int> color;

    ChiSolver(const UndirectedGraph& gg, Budget& b, int ub, int lb) : g(gg), budget(b), best(ub), lower(lb), color(gg.n(), -1) {}

    int pick() const {
        int chosen = -1, sat = -1, deg = -1;
        for (int v = 0; v < g.n(); ++v) {
            if (color[v] >= 0) continue;
            std::uint64_t mask[8] = {};
            int s = 0;
            for (int w = 0; w < g.n(); ++w)
                if (color[w] >= 0 && g.has_edge(v, w)) {
                    int c = color[w];
                    if (!((mask[c >> 6] >> (c & 63)) & 1u)) {
                        mask[c >> 6] |= 1ull << (c & 63);
                        ++s;
                    }
                }
            int d = g.degree(v);
            if (s > sat || (s == sat && d > deg)) {
                chosen = v;
                sat = s;
                deg = d;
            }
        }
        return chosen;
    }

    void rec(int colored, int used) {
        if (used >= best) return;
        if (colored == g.n()) {
            best = used;
            return;
        }
        if (!budget.tick()) {
            complete = false;
            return;
        }
        int v = pick();
        for (int c = 0; c < used && complete; ++c) {
            bool ok = true;
            for (int w = 0; w < g.n(); ++w)
                if (color[w] == c && g.has_edge(v, w)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            color[v] = c;
            rec(colored + 1, used);
            color[v] = -1;
            if (best == lower) return;  // cannot improve further
        }
        if (complete && used + 1 < best) {
            color[v] = used;
            rec(colored + 1, used + 1);
            color[v] = -1;
        }
    }
};

}  // namespace

BoundedInt chi(const UndirectedGraph& u, Budget* budget) {
    Budget local;
    Budget& b = budget ? *budget : local;
    if (u.edge_count() == 0) return {u.n() > 0 ? 1 : 0, u.n() > 0 ? 1 : 0};
    int ub = greedy_coloring(u);
    Budget clique_budget(std::min<std::uint64_t>(b.limit, 200'000));
    BoundedInt w = omega(u, &clique_budget);
    int lb = w.lower;
    if (lb == ub) return {lb, ub};
    ChiSolver solver(u, b, ub, lb);
    solver.rec(0, 0);
    if (solver.complete) return {solver.best, solver.best};
    return {lb, solver.best};
}

std::vector<std::vector<int>> maximal_independent_sets(const UndirectedGraph& u) {
    // Bron-Kerbosch with pivoting on the complement (maximal cliques of the
    // complement are exactly the maximal independent sets of u).
    UndirectedGraph h = complement(u);
    std::vector<std::vector<int>> out;
    std::vector<int> r;
    auto bk = [&](auto&& self, std::vector<int> p, std::vector<int> x) -> void {
        if (p.empty() && x.empty()) {
            out.push_back(r);
            return;
        }
        int pivot = !p.empty() ? p[0] : x[0];
        int bestcnt = -1;
        for (int cand : p) {
            int cnt = 0;
            for (int v : p)
                if (h.has_edge(cand, v)) ++cnt;
            if (cnt > bestcnt) {
                bestcnt = cnt;
                pivot = cand;
            }
        }
        std::vector<int> branch;
        for (int v : p)
            if (!h.has_edge(pivot, v) && v != pivot) branch.push_back(v);
        if (std::find(p.begin(), p.end(), pivot) != p.end()) branch.push_back(pivot);
        for (int v : branch) {
            std::vector<int> np, nx;
            for (int w : p)
                if (h.has_edge(v, w)) np.push_back(w);
            for (int w : x)
                if (h.has_edge(v, w)) nx.push_back(w);
            r.push_back(v);
            self(self, std::move(np), std::move(nx));
            r.pop_back();
            p.erase(std::remove(p.begin(), p.end(), v), p.end());
            x.push_back(v);
        }
    };
    std::vector<int> p(u.n());
    for (int v = 0; v < u.n(); ++v) p[v] = v;
    bk(bk, std::move(p), {});
    for (auto& s : out) std::sort(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Rational> chi_fractional(const UndirectedGraph& u, bool vertex_transitive, Budget* budget) {
    if (vertex_transitive) {
        BoundedInt a = alpha(u, budget);
        if (!a.exact()) return std::nullopt;
        return Rational(u.n()) / a.value();
    }
    if (u.n() > 24) return std::nullopt;
    auto sets = maximal_independent_sets(u);
    std::vector<Rational> obj(sets.size(), Rational(1));
    std::vector<LpConstraint> cons;
    for (int v = 0; v < u.n(); ++v) {
        LpConstraint c;
        c.coeffs.assign(sets.size(), Rational(0));
        for (std::size_t s = 0; s < sets.size(); ++s)
            if (std::binary_search(sets[s].begin(), sets[s].end(), v)) c.coeffs[s] = 1;
        c.sense = Sense::GreaterEq;
        c.rhs = 1;
        cons.push_back(std::move(c));
    }
    LpResult res = solve_lp(obj, cons);
    if (!res.feasible || !res.bounded) return std::nullopt;
    return res.value;
}

namespace {

// Prefer the set whose sorted vertex list is lexicographically smaller.
bool lex_smaller(std::uint32_t a, std::uint32_t b) {
    if (a == b) return false;
    std::uint32_t diff = a ^ b;
    std::uint32_t low = diff & (~diff + 1);
    return a & low;
}

// Vertex set of a shortest directed cycle within S, or 0 if acyclic.
std::uint32_t shortest_cycle(const Digraph& g, std::uint32_t s) {
    int n = g.n();
    std::uint32_t best = 0;
    int best_len = n + 1;
    for (int start = 0; start < n; ++start) {
        if (!((s >> start) & 1u)) continue;
        // BFS over out-edges within S looking for a path back to start
        std::vector<int> parent(n, -2);
        std::vector<int> dist(n, -1);
        std::vector<int> queue{start};
        dist[start] = 0;
        parent[start] = -1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            if (dist[v] + 1 >= best_len) continue;
            for (int w = 0; w < n; ++w) {
                if (!((s >> w) & 1u) || !g.has_edge(v, w)) continue;
                if (w == start) {
                    int len = dist[v] + 1;
                    if (len < best_len) {
                        std::uint32_t cyc = 0;
                        for (int x = v; x != -1; x = parent[x]) cyc |= 1u << x;
                        best = cyc;
                        best_len = len;
                    }
                    continue;
                }
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if (best_len == 2) break;
    }
    return best;
}

}  // namespace

MaisResult mais(const Digraph& g) {
    MaisResult best;
    std::unordered_set<std::uint32_t> seen;
    auto rec = [&](auto&& self, std::uint32_t s) -> void {
        if (static_cast<int>(std::popcount(s)) < best.size) return;
        if (!seen.insert(s).second) return;
        std::uint32_t cyc = shortest_cycle(g, s);
        if (!cyc) {
            int size = std::popcount(s);
            if (size > best.size || (size == best.size && lex_smaller(s, best.witness))) best = {size, s};
            return;
        }
        if (static_cast<int>(std::popcount(s)) - 1 < best.size) return;
        for (int v = 0; v < g.n(); ++v)
            if ((cyc >> v) & 1u) self(self, s & ~(1u << v));
    };
    rec(rec, g.full_mask());
    return best;
}

int kappa(const Digraph& g) {
    int min_in = g.n();
    for (int j = 0; j < g.n(); ++j) min_in = std::min(min_in, std::popcount(g.in_row(j)));
    return g.n() - min_in;
}

bool is_hamiltonian(const Digraph& g) {
    int n = g.n();
    if (n > 20) throw std::invalid_argument("is_hamiltonian: vertex cap exceeded");
    if (n == 1) return false;
    // dp[mask] = end vertices reachable on a simple path from 0 covering mask
    std::vector<std::uint32_t> dp(1u << n, 0);
    dp[1] = 1;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (!(mask & 1u) || !dp[mask]) continue;
        for (int v = 0; v < n; ++v) {
            if (!((dp[mask] >> v) & 1u)) continue;
            std::uint32_t targets = g.out_row(v) & ~mask;
            while (targets) {
                int w = std::countr_zero(targets);
                targets &= targets - 1;
                dp[mask | (1u << w)] |= 1u << w;
            }
        }
    }
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::uint32_t ends = dp[full];
    while (ends) {
        int v = std::countr_zero(ends);
        ends &= ends - 1;
        if (g.has_edge(v, 0)) return true;
    }
    return false;
}

namespace {

bool induced_cycle(const std::vector<std::uint32_t>& rows, std::uint32_t s, int n) {
    int size = std::popcount(s);
    if (size < 3) return false;
    for (int v = 0; v < n; ++v)
        if (((s >> v) & 1u) && std::popcount(rows[v] & s) != 2) return false;
    // all degrees 2: connected iff it is a single cycle
    int start = std::countr_zero(s);
    std::uint32_t seen = 1u << start;
    std::vector<int> queue{start};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::uint32_t nb = rows[queue[qi]] & s & ~seen;
        while (nb) {
            int w = std::countr_zero(nb);
            nb &= nb - 1;
            seen |= 1u << w;
            queue.push_back(w);
        }
    }
    return seen == s;
}

}  // namespace

bool is_perfect(const UndirectedGraph& u) {
    int n = u.n();
    if (n > 16) throw std::invalid_argument("is_perfect: vertex cap exceeded");
    std::vector<std::uint32_t> rows(n, 0), crows(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                if (u.has_edge(i, j)) rows[i] |= 1u << j;
                else crows[i] |= 1u << j;
            }
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        int size = std::popcount(s);
        if (size < 5 || size % 2 == 0) continue;
        if (induced_cycle(rows, s, n) || induced_cycle(crows, s, n)) return false;
    }
    return true;
}

namespace {

bool automorphism_mapping(const UndirectedGraph& u, int image_of_first) {
    int n = u.n();
    std::vector<int> perm(n, -1);
    std::vector<bool> used(n, false);
    perm[0] = image_of_first;
    used[image_of_first] = true;
    if (u.degree(0) != u.degree(image_of_first)) return false;
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (used[w] || u.degree(v) != u.degree(w)) continue;
            bool ok = true;
            for (int p = 0; p < v && ok; ++p)
                if (u.has_edge(v, p) != u.has_edge(w, perm[p])) ok = false;
            if (!ok) continue;
            perm[v] = w;
            used[w] = true;
            if (self(self, v + 1)) return true;
            perm[v] = -1;
            used[w] = false;
        }
        return false;
    };
    return rec(rec, 1);
}

}  // namespace

bool is_vertex_transitive(const UndirectedGraph& u) {
    if (u.n() > 64) throw std::invalid_argument("is_vertex_transitive: vertex cap exceeded");
    for (int v = 1; v < u.n(); ++v)
        if (!automorphism_mapping(u, v)) return false;
    return true;
}

}  // namespace idxcap
