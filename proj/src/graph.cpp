#include "idxcap/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace idxcap {

int Digraph::edge_count() const {
    int c = 0;
    for (int i = 0; i < n_; ++i) c += std::popcount(out_[i]);
    return c;
}

UndirectedGraph::UndirectedGraph(int n) : n_(n), words_((n + 63) / 64) {
    if (n < 1 || n > kMaxVertices) throw std::invalid_argument("UndirectedGraph: vertex count out of range");
    rows_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

void UndirectedGraph::add_edge(int i, int j) {
    if (i == j) throw std::invalid_argument("UndirectedGraph: self-loop");
    rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)] |= 1ull << (j & 63);
    rows_[static_cast<std::size_t>(j) * words_ + (i >> 6)] |= 1ull << (i & 63);
}

void UndirectedGraph::remove_edge(int i, int j) {
    rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)] &= ~(1ull << (j & 63));
    rows_[static_cast<std::size_t>(j) * words_ + (i >> 6)] &= ~(1ull << (i & 63));
}

int UndirectedGraph::degree(int i) const {
    int d = 0;
    const std::uint64_t* r = row(i);
    for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
    return d;
}

int UndirectedGraph::edge_count() const {
    int total = 0;
    for (int i = 0; i < n_; ++i) total += degree(i);
    return total / 2;
}

ProblemSpec::ProblemSpec(Digraph g, std::vector<int> lengths, int alphabet)
    : graph(std::move(g)), t(std::move(lengths)), q(alphabet) {
    if (t.empty()) t.assign(graph.n(), 1);
    if (static_cast<int>(t.size()) != graph.n()) throw std::invalid_argument("ProblemSpec: length tuple size mismatch");
    for (int ti : t)
        if (ti < 1) throw std::invalid_argument("ProblemSpec: message lengths must be positive");
    if (q < 2) throw std::invalid_argument("ProblemSpec: alphabet size must be at least 2");
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    int number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected a vertex number at offset " + std::to_string(start));
        return std::stoi(s.substr(start, pos - start));
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
};

}  // namespace

Digraph parse_problem(const std::string& text) {
    struct Group {
        int receiver;
        std::vector<int> side;
    };
    std::vector<Group> groups;
    Cursor c{text};
    while (true) {
        if (!c.eat('(')) throw ParseError("expected '('");
        Group g;
        g.receiver = c.number();
        if (!c.eat('|')) throw ParseError("expected '|' in group for receiver " + std::to_string(g.receiver));
        c.skip_ws();
        if (c.eat('-')) {
            // empty side information
        } else if (c.pos < c.s.size() && c.s[c.pos] != ')') {
            g.side.push_back(c.number());
            while (c.eat(',')) g.side.push_back(c.number());
        }
        if (!c.eat(')')) throw ParseError("expected ')' in group for receiver " + std::to_string(g.receiver));
        groups.push_back(std::move(g));
        if (c.done()) break;
        if (!c.eat(',')) throw ParseError("expected ',' between groups");
    }

    int n = static_cast<int>(groups.size());
    if (n < 1 || n > Digraph::kMaxVertices) throw ParseError("vertex count out of range");
    std::vector<bool> seen(n, false);
    Digraph g(n);
    for (const auto& grp : groups) {
        if (grp.receiver < 1 || grp.receiver > n)
            throw ParseError("receiver index " + std::to_string(grp.receiver) + " out of range [1," + std::to_string(n) + "]");
        if (seen[grp.receiver - 1]) throw ParseError("duplicate receiver group " + std::to_string(grp.receiver));
        seen[grp.receiver - 1] = true;
        for (int i : grp.side) {
            if (i < 1 || i > n)
                throw ParseError("side information index " + std::to_string(i) + " out of range [1," + std::to_string(n) + "]");
            if (i == grp.receiver)
                throw ParseError("receiver " + std::to_string(i) + " listed in its own side information");
            g.add_edge(i - 1, grp.receiver - 1);
        }
    }
    return g;
}

std::string render_problem(const Digraph& g) {
    std::ostringstream out;
    for (int j = 0; j < g.n(); ++j) {
        if (j) out << ',';
        out << '(' << (j + 1) << '|';
        std::uint32_t a = g.side_info(j);
        if (!a) {
            out << '-';
        } else {
            bool first = true;
            for (int i = 0; i < g.n(); ++i)
                if ((a >> i) & 1u) {
                    if (!first) out << ',';
                    out << (i + 1);
                    first = false;
                }
        }
        out << ')';
    }
    return out.str();
}

std::string to_hex(const Digraph& g) {
    static const char* digits = "0123456789ABCDEF";
    int nibbles = (g.n() + 3) / 4;
    std::string s = std::to_string(g.n()) + ":";
    for (int i = 0; i < g.n(); ++i) {
        // bit for vertex 1 first: reverse the row so j=0 is the MSB
        std::uint32_t rev = 0;
        for (int j = 0; j < g.n(); ++j)
            if (g.has_edge(i, j)) rev |= 1u << (4 * nibbles - 1 - j);
        for (int k = nibbles - 1; k >= 0; --k) s += digits[(rev >> (4 * k)) & 0xF];
    }
    return s;
}

Digraph from_hex(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("hex form missing ':'");
    int n = std::stoi(s.substr(0, colon));
    if (n < 1 || n > Digraph::kMaxVertices) throw ParseError("hex form vertex count out of range");
    int nibbles = (n + 3) / 4;
    std::string body = s.substr(colon + 1);
    if (static_cast<int>(body.size()) != n * nibbles) throw ParseError("hex form length mismatch");
    Digraph g(n);
    for (int i = 0; i < n; ++i) {
        std::uint32_t rev = 0;
        for (int k = 0; k < nibbles; ++k) {
            char c = body[static_cast<std::size_t>(i) * nibbles + k];
            int v = (c >= '0' && c <= '9') ? c - '0' : (c >= 'A' && c <= 'F') ? c - 'A' + 10 : (c >= 'a' && c <= 'f') ? c - 'a' + 10 : -1;
            if (v < 0) throw ParseError("invalid hex digit");
            rev = (rev << 4) | static_cast<std::uint32_t>(v);
        }
        for (int j = 0; j < n; ++j)
            if ((rev >> (4 * nibbles - 1 - j)) & 1u) {
                if (i == j) throw ParseError("hex form encodes a self-loop");
                g.add_edge(i, j);
            }
    }
    return g;
}

Digraph complement(const Digraph& g) {
    Digraph c(g.n());
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (i != j && !g.has_edge(i, j)) c.add_edge(i, j);
    return c;
}

UndirectedGraph complement(const UndirectedGraph& u) {
    UndirectedGraph c(u.n());
    for (int i = 0; i < u.n(); ++i)
        for (int j = i + 1; j < u.n(); ++j)
            if (!u.has_edge(i, j)) c.add_edge(i, j);
    return c;
}

UndirectedGraph underlying(const Digraph& g) {
    UndirectedGraph u(g.n());
    for (int i = 0; i < g.n(); ++i)
        for (int j = i + 1; j < g.n(); ++j)
            if (g.has_edge(i, j) || g.has_edge(j, i)) u.add_edge(i, j);
    return u;
}

Digraph induced(const Digraph& g, std::uint32_t vertex_set) {
    if (!vertex_set) throw std::invalid_argument("induced: empty vertex set");
    std::vector<int> verts;
    for (int v = 0; v < g.n(); ++v)
        if ((vertex_set >> v) & 1u) verts.push_back(v);
    Digraph h(static_cast<int>(verts.size()));
    for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = 0; b < verts.size(); ++b)
            if (a != b && g.has_edge(verts[a], verts[b])) h.add_edge(static_cast<int>(a), static_cast<int>(b));
    return h;
}

UndirectedGraph induced(const UndirectedGraph& u, const std::vector<int>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("induced: empty vertex set");
    UndirectedGraph h(static_cast<int>(vertices.size()));
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (u.has_edge(vertices[a], vertices[b])) h.add_edge(static_cast<int>(a), static_cast<int>(b));
    return h;
}

bool is_bidirectional(const Digraph& g) {
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.has_edge(i, j) && !g.has_edge(j, i)) return false;
    return true;
}

UndirectedGraph as_undirected(const Digraph& g) {
    if (!is_bidirectional(g)) throw std::invalid_argument("as_undirected: graph is not bidirectional");
    return underlying(g);
}

Digraph lex_product(const Digraph& g, const Digraph& f) {
    int n = g.n() * f.n();
    if (n > Digraph::kMaxVertices) throw std::invalid_argument("lex_product: result exceeds vertex cap");
    Digraph p(n);
    auto id = [&](int a, int b) { return a * f.n() + b; };
    for (int a1 = 0; a1 < g.n(); ++a1)
        for (int b1 = 0; b1 < f.n(); ++b1)
            for (int a2 = 0; a2 < g.n(); ++a2)
                for (int b2 = 0; b2 < f.n(); ++b2) {
                    if (a1 == a2 && b1 == b2) continue;
                    if (g.has_edge(a1, a2) || (a1 == a2 && f.has_edge(b1, b2))) p.add_edge(id(a1, b1), id(a2, b2));
                }
    return p;
}

Digraph generalized_lex(const Digraph& g0, const std::vector<Digraph>& parts) {
    if (static_cast<int>(parts.size()) != g0.n()) throw std::invalid_argument("generalized_lex: part count mismatch");
    int n = 0;
    std::vector<int> offset(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        offset[i] = n;
        n += parts[i].n();
    }
    if (n > Digraph::kMaxVertices) throw std::invalid_argument("generalized_lex: result exceeds vertex cap");
    Digraph p(n);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (int a = 0; a < parts[i].n(); ++a)
            for (int b = 0; b < parts[i].n(); ++b)
                if (parts[i].has_edge(a, b)) p.add_edge(offset[i] + a, offset[i] + b);
    for (int i = 0; i < g0.n(); ++i)
        for (int j = 0; j < g0.n(); ++j)
            if (g0.has_edge(i, j))
                for (int a = 0; a < parts[i].n(); ++a)
                    for (int b = 0; b < parts[j].n(); ++b) p.add_edge(offset[i] + a, offset[j] + b);
    return p;
}

UndirectedGraph disjunctive(const UndirectedGraph& u1, const UndirectedGraph& u2) {
    int n = u1.n() * u2.n();
    UndirectedGraph p(n);
    auto id = [&](int a, int b) { return a * u2.n() + b; };
    for (int a1 = 0; a1 < u1.n(); ++a1)
        for (int b1 = 0; b1 < u2.n(); ++b1)
            for (int a2 = a1; a2 < u1.n(); ++a2)
                for (int b2 = 0; b2 < u2.n(); ++b2) {
                    if (a1 == a2 && b2 <= b1) continue;
                    if (u1.has_edge(a1, a2) || u2.has_edge(b1, b2)) p.add_edge(id(a1, b1), id(a2, b2));
                }
    return p;
}

UndirectedGraph strong(const UndirectedGraph& u1, const UndirectedGraph& u2) {
    int n = u1.n() * u2.n();
    UndirectedGraph p(n);
    auto id = [&](int a, int b) { return a * u2.n() + b; };
    for (int a1 = 0; a1 < u1.n(); ++a1)
        for (int b1 = 0; b1 < u2.n(); ++b1)
            for (int a2 = a1; a2 < u1.n(); ++a2)
                for (int b2 = 0; b2 < u2.n(); ++b2) {
                    if (a1 == a2 && b2 <= b1) continue;
                    bool va = a1 == a2 || u1.has_edge(a1, a2);
                    bool vb = b1 == b2 || u2.has_edge(b1, b2);
                    if (va && vb) p.add_edge(id(a1, b1), id(a2, b2));
                }
    return p;
}

UndirectedGraph strong_power(const UndirectedGraph& u, int k) {
    if (k < 1) throw std::invalid_argument("strong_power: k must be positive");
    UndirectedGraph p = u;
    for (int i = 1; i < k; ++i) p = strong(p, u);
    return p;
}

namespace {

// Iterative Tarjan, small graphs only.
struct TarjanState {
    const Digraph& g;
    std::vector<int> index, low, stack;
    std::vector<bool> on_stack;
    int counter = 0;
    std::vector<std::uint32_t> comps;

    explicit TarjanState(const Digraph& gg) : g(gg), index(gg.n(), -1), low(gg.n(), 0), on_stack(gg.n(), false) {}

    void run(int root) {
        struct Frame {
            int v;
            int next;
        };
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            bool descended = false;
            while (f.next < g.n()) {
                int w = f.next++;
                if (!g.has_edge(f.v, w)) continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[f.v] = std::min(low[f.v], index[w]);
            }
            if (descended) continue;
            if (low[f.v] == index[f.v]) {
                std::uint32_t comp = 0;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp |= 1u << w;
                } while (w != f.v);
                comps.push_back(comp);
            }
            int v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
    }
};

}  // namespace

std::vector<std::uint32_t> scc_decompose(const Digraph& g) {
    TarjanState st(g);
    for (int v = 0; v < g.n(); ++v)
        if (st.index[v] < 0) st.run(v);
    return st.comps;
}

bool is_strongly_connected(const Digraph& g) { return scc_decompose(g).size() == 1; }

bool edge_on_cycle(const Digraph& g, int i, int j) {
    if (!g.has_edge(i, j)) throw std::invalid_argument("edge_on_cycle: edge not present");
    for (std::uint32_t comp : scc_decompose(g))
        if (((comp >> i) & 1u) && ((comp >> j) & 1u)) return true;
    return false;
}

bool is_acyclic(const Digraph& g, std::uint32_t vertex_set) {
    // Repeatedly peel vertices with no in-edges from within the set.
    std::uint32_t s = vertex_set;
    bool progress = true;
    while (s && progress) {
        progress = false;
        for (int v = 0; v < g.n(); ++v) {
            if (!((s >> v) & 1u)) continue;
            if ((g.in_row(v) & s) == 0) {
                s &= ~(1u << v);
                progress = true;
            }
        }
    }
    return s == 0;
}

bool is_connected(const UndirectedGraph& u) {
    std::vector<bool> seen(u.n(), false);
    std::vector<int> queue{0};
    seen[0] = true;
    int visited = 1;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int w = 0; w < u.n(); ++w)
            if (!seen[w] && u.has_edge(v, w)) {
                seen[w] = true;
                ++visited;
                queue.push_back(w);
            }
    }
    return visited == u.n();
}

}  // namespace idxcap
