#include "idxcap/confusion.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace idxcap {

namespace {

constexpr std::int64_t kVertexCap = 4096;

std::int64_t ipow(std::int64_t base, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}

std::vector<std::int64_t> block_sizes(const ProblemSpec& spec) {
    std::vector<std::int64_t> s(spec.t.size());
    for (std::size_t j = 0; j < spec.t.size(); ++j) s[j] = ipow(spec.q, spec.t[j]);
    return s;
}

std::int64_t checked_tuple_count(const ProblemSpec& spec) {
    std::int64_t total = 1;
    for (int tj : spec.t) {
        total *= ipow(spec.q, tj);
        if (total > kVertexCap) throw std::invalid_argument("confusion graph: tuple count exceeds vertex cap");
    }
    return total;
}

}  // namespace

std::int64_t tuple_count(const ProblemSpec& spec) {
    std::int64_t total = 1;
    for (int tj : spec.t) total *= ipow(spec.q, tj);
    return total;
}

MessageTuple MessageTuple::from_index(const ProblemSpec& spec, std::int64_t index) {
    auto sizes = block_sizes(spec);
    MessageTuple x;
    x.digits.assign(sizes.size(), 0);
    for (int j = static_cast<int>(sizes.size()) - 1; j >= 0; --j) {
        x.digits[j] = static_cast<int>(index % sizes[j]);
        index /= sizes[j];
    }
    return x;
}

std::int64_t MessageTuple::index(const ProblemSpec& spec) const {
    auto sizes = block_sizes(spec);
    std::int64_t idx = 0;
    for (std::size_t j = 0; j < sizes.size(); ++j) idx = idx * sizes[j] + digits[j];
    return idx;
}

int MessageTuple::symbol(const ProblemSpec& spec, int j, int l) const {
    if (l < 0 || l >= spec.t[j]) throw std::invalid_argument("MessageTuple::symbol: position out of range");
    return static_cast<int>((digits[j] / ipow(spec.q, spec.t[j] - 1 - l)) % spec.q);
}

bool confusable_at(const MessageTuple& x, const MessageTuple& z, const ProblemSpec& spec, int j, int l) {
    if (x.symbol(spec, j, l) == z.symbol(spec, j, l)) return false;
    std::uint32_t side = spec.graph.side_info(j);
    while (side) {
        int i = std::countr_zero(side);
        side &= side - 1;
        if (x.digits[i] != z.digits[i]) return false;
    }
    return true;
}

namespace {

// Shared construction: edges for vertex j, either restricted to one position
// l or unioned over all positions of j (l < 0). Groups tuples by their
// projection onto A_j so only within-group pairs are examined.
void add_vertex_edges(UndirectedGraph& out, const ProblemSpec& spec, int j, int l) {
    std::int64_t total = checked_tuple_count(spec);
    int words = out.words();
    // group key: mixed-radix index of the A_j digits; class key within a
    // group: the symbol(s) that must differ
    std::vector<std::int64_t> group(total), cls(total);
    std::int64_t num_groups = 1;
    std::uint32_t side = spec.graph.side_info(j);
    for (std::int64_t v = 0; v < total; ++v) {
        MessageTuple x = MessageTuple::from_index(spec, v);
        std::int64_t gk = 0;
        std::uint32_t s = side;
        while (s) {
            int i = std::countr_zero(s);
            s &= s - 1;
            gk = gk * ipow(spec.q, spec.t[i]) + x.digits[i];
        }
        group[v] = gk;
        cls[v] = (l >= 0) ? x.symbol(spec, j, l) : x.digits[j];
    }
    std::uint32_t s = side;
    while (s) {
        int i = std::countr_zero(s);
        s &= s - 1;
        num_groups *= ipow(spec.q, spec.t[i]);
    }
    std::int64_t num_classes = (l >= 0) ? spec.q : ipow(spec.q, spec.t[j]);
    // group_mask[g] and class_mask[g][c] as bitsets over tuples
    std::vector<std::uint64_t> gmask(static_cast<std::size_t>(num_groups) * words, 0);
    std::vector<std::uint64_t> cmask(static_cast<std::size_t>(num_groups) * num_classes * words, 0);
    for (std::int64_t v = 0; v < total; ++v) {
        gmask[group[v] * words + (v >> 6)] |= 1ull << (v & 63);
        cmask[(group[v] * num_classes + cls[v]) * words + (v >> 6)] |= 1ull << (v & 63);
    }
    for (std::int64_t v = 0; v < total; ++v) {
        const std::uint64_t* g = gmask.data() + group[v] * words;
        const std::uint64_t* c = cmask.data() + (group[v] * num_classes + cls[v]) * words;
        std::uint64_t* row = out.row(static_cast<int>(v));
        for (int w = 0; w < words; ++w) row[w] |= g[w] & ~c[w];
    }
}

}  // namespace

UndirectedGraph confusion_component(const ProblemSpec& spec, int j, int l) {
    if (j < 0 || j >= spec.graph.n()) throw std::invalid_argument("confusion_component: vertex out of range");
    if (l < 0 || l >= spec.t[j]) throw std::invalid_argument("confusion_component: position out of range");
    UndirectedGraph out(static_cast<int>(checked_tuple_count(spec)));
    add_vertex_edges(out, spec, j, l);
    return out;
}

UndirectedGraph confusion_graph(const ProblemSpec& spec) {
    UndirectedGraph out(static_cast<int>(checked_tuple_count(spec)));
    for (int j = 0; j < spec.graph.n(); ++j) add_vertex_edges(out, spec, j, -1);
    return out;
}

std::string edge_list(const UndirectedGraph& u) {
    std::ostringstream os;
    for (int i = 0; i < u.n(); ++i)
        for (int j = i + 1; j < u.n(); ++j)
            if (u.has_edge(i, j)) os << i << ' ' << j << '\n';
    return os.str();
}

}  // namespace idxcap
