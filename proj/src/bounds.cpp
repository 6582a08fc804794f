#include "idxcap/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "idxcap/canonical.hpp"
#include "idxcap/confusion.hpp"
#include "idxcap/criticality.hpp"
#include "idxcap/invariants.hpp"
#include "idxcap/lp.hpp"
#include "idxcap/theta.hpp"

namespace idxcap {

Rational beta_mais(const Digraph& g) { return Rational(mais(g).size); }

BoundedInt beta_clique_cover(const Digraph& g, Budget* budget) {
    return chi(underlying(complement(g)), budget);
}

std::optional<Rational> beta_fcc(const Digraph& g, Budget* budget) {
    UndirectedGraph u = underlying(complement(g));
    return chi_fractional(u, false, budget);
}

int beta_partial_clique(const Digraph& g) {
    int n = g.n();
    if (n > 13) throw std::invalid_argument("beta_partial_clique: vertex cap exceeded");
    std::uint32_t full = g.full_mask();
    std::vector<int> kap(full + 1, 0);
    for (std::uint32_t s = 1; s <= full; ++s) {
        int min_in = 32;
        for (int j = 0; j < n; ++j)
            if ((s >> j) & 1u) min_in = std::min(min_in, std::popcount(g.in_row(j) & s));
        kap[s] = std::popcount(s) - min_in;
    }
    std::vector<int> f(full + 1, 0);
    for (std::uint32_t t = 1; t <= full; ++t) {
        f[t] = n + 1;
        // iterate nonempty subsets s of t containing t's lowest vertex (any
        // partition has a unique part holding that vertex)
        std::uint32_t low = t & (~t + 1);
        for (std::uint32_t s = t; s; s = (s - 1) & t) {
            if (!(s & low)) continue;
            f[t] = std::min(f[t], kap[s] + f[t & ~s]);
        }
    }
    return f[full];
}

namespace {

int ceil_log2(int x) {
    int k = 0;
    while ((1 << k) < x) ++k;
    return k;
}

ProblemSpec uniform_spec(const ProblemSpec& spec, int t) {
    ProblemSpec s = spec;
    s.t.assign(spec.graph.n(), t);
    return s;
}

}  // namespace

Rational beta_confusion_upper(const ProblemSpec& spec, int t, Budget* budget) {
    UndirectedGraph gamma = confusion_graph(uniform_spec(spec, t));
    BoundedInt x = chi(gamma, budget);
    return Rational(ceil_log2(x.upper), t);
}

double beta_confusion_seq(const ProblemSpec& spec, int t, Budget* budget) {
    UndirectedGraph gamma = confusion_graph(uniform_spec(spec, t));
    BoundedInt w = omega(gamma, budget);
    return std::log2(static_cast<double>(w.lower)) / t;
}

double beta_theta_upper(const ProblemSpec& spec, int t) {
    UndirectedGraph gamma = confusion_graph(uniform_spec(spec, t));
    ThetaResult r = lovasz_theta(complement(gamma));
    return std::log2(r.value + r.tol) / t;
}

RateRegion region_mais(const Digraph& g) {
    int n = g.n();
    if (n > 10) throw std::invalid_argument("region_mais: vertex cap exceeded");
    std::uint32_t full = g.full_mask();
    std::vector<bool> acyclic(full + 1);
    for (std::uint32_t s = 0; s <= full; ++s) acyclic[s] = is_acyclic(g, s);
    RateRegion region;
    region.n = n;
    for (std::uint32_t s = 1; s <= full; ++s) {
        if (!acyclic[s]) continue;
        bool maximal = true;
        for (int v = 0; v < n && maximal; ++v)
            if (!((s >> v) & 1u) && acyclic[s | (1u << v)]) maximal = false;
        if (maximal) region.inequalities.emplace_back(s, Rational(1));
    }
    std::sort(region.inequalities.begin(), region.inequalities.end(),
              [](const auto& a, const auto& b) {
                  if (std::popcount(a.first) != std::popcount(b.first))
                      return std::popcount(a.first) < std::popcount(b.first);
                  return a.first < b.first;
              });
    return region;
}

namespace {

// All cliques of the side information graph: vertex sets complete in both
// directions (singletons included).
std::vector<std::uint32_t> all_cliques(const Digraph& g) {
    int n = g.n();
    UndirectedGraph bid(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.has_edge(i, j) && g.has_edge(j, i)) bid.add_edge(i, j);
    std::vector<std::uint32_t> cliques;
    std::uint32_t full = g.full_mask();
    for (std::uint32_t s = 1; s <= full; ++s) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            if ((s >> i) & 1u)
                for (int j = i + 1; j < n && ok; ++j)
                    if (((s >> j) & 1u) && !bid.has_edge(i, j)) ok = false;
        if (ok) cliques.push_back(s);
    }
    return cliques;
}

}  // namespace

bool region_fcc_contains(const Digraph& g, const std::vector<Rational>& r) {
    int n = g.n();
    if (n > 10) throw std::invalid_argument("region_fcc_contains: vertex cap exceeded");
    auto cliques = all_cliques(g);
    std::vector<LpConstraint> cons;
    {
        LpConstraint budget_row;
        budget_row.coeffs.assign(cliques.size(), Rational(1));
        budget_row.sense = Sense::LessEq;
        budget_row.rhs = 1;
        cons.push_back(std::move(budget_row));
    }
    for (int j = 0; j < n; ++j) {
        LpConstraint row;
        row.coeffs.assign(cliques.size(), Rational(0));
        for (std::size_t c = 0; c < cliques.size(); ++c)
            if ((cliques[c] >> j) & 1u) row.coeffs[c] = 1;
        row.sense = Sense::GreaterEq;
        row.rhs = r[j];
        cons.push_back(std::move(row));
    }
    return lp_feasible(cons, cliques.size());
}

namespace {

int rank_of(std::vector<std::vector<Rational>> m) {
    int rank = 0;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t piv = m.size();
        for (std::size_t r = rank; r < m.size(); ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::vector<std::vector<Rational>> region_vertices(const RateRegion& region) {
    int n = region.n;
    if (n > 8) throw std::invalid_argument("region_vertices: vertex cap exceeded");
    // constraint list: 0..n-1 lower bounds -R_j <= 0, n..2n-1 upper bounds
    // R_j <= 1, then the region rows in order
    struct Con {
        std::vector<Rational> a;
        Rational b;
    };
    std::vector<Con> cons;
    for (int j = 0; j < n; ++j) {
        Con c{std::vector<Rational>(n, Rational(0)), Rational(0)};
        c.a[j] = -1;
        cons.push_back(std::move(c));
    }
    for (int j = 0; j < n; ++j) {
        Con c{std::vector<Rational>(n, Rational(0)), Rational(1)};
        c.a[j] = 1;
        cons.push_back(std::move(c));
    }

    struct Vert {
        std::vector<Rational> x;
        std::vector<int> tight;
    };
    std::vector<Vert> verts;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        Vert v;
        v.x.assign(n, Rational(0));
        for (int j = 0; j < n; ++j) {
            v.x[j] = ((m >> j) & 1u) ? Rational(1) : Rational(0);
            v.tight.push_back(((m >> j) & 1u) ? n + j : j);
        }
        std::sort(v.tight.begin(), v.tight.end());
        verts.push_back(std::move(v));
    }

    for (const auto& [mask, b] : region.inequalities) {
        Con c{std::vector<Rational>(n, Rational(0)), b};
        for (int j = 0; j < n; ++j)
            if ((mask >> j) & 1u) c.a[j] = 1;
        int idx = static_cast<int>(cons.size());
        cons.push_back(c);

        auto eval = [&](const Vert& v) {
            Rational s = 0;
            for (int j = 0; j < n; ++j) s += c.a[j] * v.x[j];
            return s;
        };
        std::vector<Vert> keep, cut;
        for (auto& v : verts) {
            Rational s = eval(v);
            if (s < c.b) keep.push_back(std::move(v));
            else if (s == c.b) {
                v.tight.push_back(idx);
                keep.push_back(std::move(v));
            } else
                cut.push_back(std::move(v));
        }
        std::vector<Vert> born;
        for (const auto& u : keep) {
            if (!u.tight.empty() && u.tight.back() == idx) continue;  // already on the new facet
            for (const auto& w : cut) {
                std::vector<int> common;
                std::set_intersection(u.tight.begin(), u.tight.end(), w.tight.begin(), w.tight.end(),
                                      std::back_inserter(common));
                if (static_cast<int>(common.size()) < n - 1) continue;
                std::vector<std::vector<Rational>> rowsm;
                for (int ci : common) rowsm.push_back(cons[ci].a);
                if (rank_of(rowsm) != n - 1) continue;
                Rational su = eval(u), sw = eval(w);
                Rational lam = (c.b - su) / (sw - su);  // in (0,1)
                Vert nv;
                nv.x.assign(n, Rational(0));
                for (int j = 0; j < n; ++j) nv.x[j] = u.x[j] + lam * (w.x[j] - u.x[j]);
                nv.tight = common;
                nv.tight.push_back(idx);
                std::sort(nv.tight.begin(), nv.tight.end());
                bool dup = false;
                for (const auto& o : born)
                    if (o.x == nv.x) {
                        dup = true;
                        break;
                    }
                if (!dup) born.push_back(std::move(nv));
            }
        }
        verts = std::move(keep);
        for (auto& v : born) verts.push_back(std::move(v));
    }

    std::vector<std::vector<Rational>> out;
    for (auto& v : verts) out.push_back(std::move(v.x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<RateRegion> region_capacity_certified(const Digraph& g) {
    RateRegion region = region_mais(g);
    // cheap route: unicycle reduction bidirectional with perfect skeleton
    if (g.n() <= 16) {
        Digraph gp = reduce_g_prime(g);
        if (is_bidirectional(gp) && is_perfect(underlying(gp))) return region;
    }
    if (g.n() > 8) return std::nullopt;
    for (const auto& v : region_vertices(region))
        if (!region_fcc_contains(g, v)) return std::nullopt;
    return region;
}

Rational general_lex_upper(const std::vector<Rational>& betas_g, const std::vector<Rational>& betas_f) {
    if (betas_f.empty() || betas_g.size() != betas_f.size())
        throw std::invalid_argument("general_lex_upper: size mismatch");
    if (!std::is_sorted(betas_f.begin(), betas_f.end()))
        throw std::invalid_argument("general_lex_upper: part rates must be sorted ascending");
    Rational total = betas_f[0] * betas_g[0];
    for (std::size_t i = 1; i < betas_f.size(); ++i) total += (betas_f[i] - betas_f[i - 1]) * betas_g[i];
    return total;
}

namespace {

std::vector<std::uint32_t> complement_components(const Digraph& g) {
    UndirectedGraph u = underlying(complement(g));
    int n = u.n();
    std::vector<std::uint32_t> comps;
    std::uint32_t seen = 0;
    for (int s = 0; s < n; ++s) {
        if ((seen >> s) & 1u) continue;
        std::uint32_t comp = 1u << s;
        std::vector<int> queue{s};
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (int w = 0; w < n; ++w)
                if (!((comp >> w) & 1u) && u.has_edge(queue[qi], w)) {
                    comp |= 1u << w;
                    queue.push_back(w);
                }
        seen |= comp;
        comps.push_back(comp);
    }
    return comps;
}

void merge_lower(BetaBracket& b, const Rational& v, const std::string& src) {
    if (v > b.lower) {
        b.lower = v;
        b.lower_src = src;
    }
}

void merge_upper(BetaBracket& b, const Rational& v, const std::string& src) {
    if (b.upper_src.empty() || v < b.upper) {
        b.upper = v;
        b.upper_src = src;
    }
}

// Equal-size block partitions of [0,n) for the lexicographic factor search.
void block_partitions(int n, int s, std::uint32_t remaining, std::vector<std::uint32_t>& cur,
                      std::vector<std::vector<std::uint32_t>>& out) {
    if (!remaining) {
        out.push_back(cur);
        return;
    }
    int anchor = std::countr_zero(remaining);
    std::uint32_t pool = remaining & ~(1u << anchor);
    // choose s-1 companions for the anchor
    std::vector<int> elems;
    for (int v = 0; v < n; ++v)
        if ((pool >> v) & 1u) elems.push_back(v);
    std::vector<int> pick(s - 1);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == s - 1) {
            std::uint32_t block = 1u << anchor;
            for (int i = 0; i < s - 1; ++i) block |= 1u << pick[i];
            cur.push_back(block);
            block_partitions(n, s, remaining & ~block, cur, out);
            cur.pop_back();
            return;
        }
        for (int i = start; i < static_cast<int>(elems.size()); ++i) {
            pick[depth] = elems[i];
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

BetaBracket beta_bracket(const Digraph& g, Budget* budget) {
    Budget local;
    Budget& bud = budget ? *budget : local;
    int n = g.n();
    BetaBracket b;
    if (n == 1) {
        b.lower = b.upper = 1;
        b.lower_src = b.upper_src = "MAIS";
        return b;
    }

    // strong-connectivity decomposition: rates add across the condensation
    auto sccs = scc_decompose(g);
    if (sccs.size() > 1) {
        b.lower = b.upper = 0;
        for (auto mask : sccs) {
            BetaBracket part = beta_bracket(induced(g, mask), &bud);
            b.lower += part.lower;
            b.upper += part.upper;
        }
        b.lower_src = "SCC";
        b.upper_src = "SCC";
        return b;
    }

    // complement disconnection: fully mutually informed groups take the max
    auto comps = complement_components(g);
    if (comps.size() > 1) {
        b.lower = b.upper = 0;
        for (auto mask : comps) {
            BetaBracket part = beta_bracket(induced(g, mask), &bud);
            b.lower = std::max(b.lower, part.lower);
            b.upper = std::max(b.upper, part.upper);
        }
        b.lower_src = "COMP";
        b.upper_src = "COMP";
        return b;
    }

    merge_lower(b, beta_mais(g), "MAIS");
    BoundedInt cc = beta_clique_cover(g, &bud);
    merge_upper(b, Rational(cc.upper), "CC");
    if (auto fcc = beta_fcc(g, &bud)) merge_upper(b, *fcc, "FCC");
    if (n <= 13) merge_upper(b, Rational(beta_partial_clique(g)), "PC");

    ProblemSpec spec(g);
    if (!b.tight() && n <= 12) merge_upper(b, beta_confusion_upper(spec, 1, &bud), "CONF_1");
    if (!b.tight() && n <= 5) merge_upper(b, beta_confusion_upper(spec, 2, &bud), "CONF_2");
    if (n <= 5) {
        b.theta_upper = beta_theta_upper(spec, 1);
        b.has_theta = true;
    }

    // lexicographic factorizations: brackets multiply across tight factors
    if (!b.tight() && n <= 9) {
        for (int s = 2; s <= n / 2; ++s) {
            if (n % s) continue;
            std::vector<std::vector<std::uint32_t>> partitions;
            std::vector<std::uint32_t> cur;
            block_partitions(n, s, g.full_mask(), cur, partitions);
            for (const auto& blocks : partitions) {
                int m = static_cast<int>(blocks.size());
                Digraph quotient(m);
                bool ok = true;
                for (int bi = 0; bi < m && ok; ++bi)
                    for (int bj = 0; bj < m && ok; ++bj) {
                        if (bi == bj) continue;
                        int present = 0, total = 0;
                        for (int x = 0; x < n; ++x) {
                            if (!((blocks[bi] >> x) & 1u)) continue;
                            for (int y = 0; y < n; ++y) {
                                if (!((blocks[bj] >> y) & 1u)) continue;
                                ++total;
                                present += g.has_edge(x, y) ? 1 : 0;
                            }
                        }
                        if (present == total) quotient.add_edge(bi, bj);
                        else if (present != 0) ok = false;
                    }
                if (!ok) continue;
                CanonicalForm ref = canonical_form(induced(g, blocks[0]));
                for (int bi = 1; bi < m && ok; ++bi)
                    if (canonical_form(induced(g, blocks[bi])) != ref) ok = false;
                if (!ok) continue;
                BetaBracket bg = beta_bracket(quotient, &bud);
                BetaBracket bf = beta_bracket(induced(g, blocks[0]), &bud);
                merge_lower(b, bg.lower * bf.lower, "LEX");
                merge_upper(b, bg.upper * bf.upper, "LEX");
                if (b.tight()) break;
            }
            if (b.tight()) break;
        }
    }
    return b;
}

}  // namespace idxcap
