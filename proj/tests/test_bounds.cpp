#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "idxcap/bounds.hpp"
#include "idxcap/census.hpp"
#include "idxcap/invariants.hpp"
#include "test_util.hpp"

using namespace idxcap;

namespace {

const char* kThreeMsg = "(1|2,3),(2|1),(3|1,2)";

Digraph directed_cycle(int n) {
    Digraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Digraph bidirectional_cycle(int n) {
    Digraph g(n);
    for (int i = 0; i < n; ++i) {
        g.add_edge(i, (i + 1) % n);
        g.add_edge((i + 1) % n, i);
    }
    return g;
}

}  // namespace

TEST_CASE("MAIS bound examples") {
    CHECK(beta_mais(parse_problem(kThreeMsg)) == Rational(2));
    Digraph acyclic(4);
    acyclic.add_edge(0, 1);
    acyclic.add_edge(1, 2);
    CHECK(beta_mais(acyclic) == Rational(4));
    // bidirectional pentagon plus one extra unidirectional edge
    Digraph fig3 = parse_problem("(1|2,4,5),(2|1,3),(3|2,4),(4|3,5),(5|1,4)");
    CHECK(beta_mais(fig3) == Rational(2));
}

TEST_CASE("clique cover and fractional clique cover") {
    Digraph g = parse_problem(kThreeMsg);
    CHECK(beta_clique_cover(g).value() == 2);  // cliques {1,3}, {2}
    Digraph iso(4);
    CHECK(beta_clique_cover(iso).value() == 4);
    Digraph c5 = bidirectional_cycle(5);
    CHECK(beta_clique_cover(c5).value() == 3);
    CHECK(*beta_fcc(c5) == Rational(5, 2));
}

TEST_CASE("partial clique bound") {
    CHECK(beta_partial_clique(directed_cycle(3)) == 2);
    Digraph acyclic(3);
    acyclic.add_edge(0, 1);
    CHECK(beta_partial_clique(acyclic) == 3);
    std::mt19937 rng(0);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 3 + static_cast<int>(rng() % 4);
        Digraph g = testutil::random_digraph(n, rng, 0.5);
        if (is_hamiltonian(g)) CHECK(beta_partial_clique(g) <= n - 1);
    }
}

TEST_CASE("confusion-based upper bounds") {
    ProblemSpec spec(parse_problem(kThreeMsg));
    CHECK(beta_confusion_upper(spec, 1) == Rational(2));  // chi(Gamma_1) = 4
    ProblemSpec one(parse_problem("(1|-)"));
    CHECK(beta_confusion_upper(one, 1) == Rational(1));
    // theta upper dominates the MAIS lower bound on all 3-vertex problems
    for (const auto& g : testutil::all_labeled_digraphs(3)) {
        ProblemSpec s(g);
        double th = beta_theta_upper(s, 1);
        CHECK(th >= static_cast<double>(mais(g).size) - 1e-4);
        double seq = beta_confusion_seq(s, 1);
        CHECK(seq <= th + 1e-4);
    }
}

TEST_CASE("MAIS region examples") {
    RateRegion r = region_mais(parse_problem(kThreeMsg));
    REQUIRE(r.inequalities.size() == 2);
    CHECK(r.inequalities[0] == std::pair<std::uint32_t, Rational>{0b001u, Rational(1)});
    CHECK(r.inequalities[1] == std::pair<std::uint32_t, Rational>{0b110u, Rational(1)});

    Digraph k3 = bidirectional_cycle(3);  // complete on 3 vertices
    RateRegion rk = region_mais(k3);
    REQUIRE(rk.inequalities.size() == 3);
    for (const auto& [mask, b] : rk.inequalities) CHECK(std::popcount(mask) == 1);

    // 5-message critical example: six printed pairwise inequalities
    Digraph fig4 = parse_problem("(1|4,5),(2|1,3),(3|2,4),(4|2,3,5),(5|1,2,4)");
    RateRegion rf = region_mais(fig4);
    std::vector<std::uint32_t> expect{0b00011, 0b00101, 0b01001, 0b01010, 0b10010, 0b10100};
    REQUIRE(rf.inequalities.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(rf.inequalities[i].first == expect[i]);
}

TEST_CASE("fractional clique cover region membership") {
    Digraph g = parse_problem(kThreeMsg);
    CHECK(region_fcc_contains(g, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
    CHECK(region_fcc_contains(g, {Rational(0), Rational(0), Rational(0)}));
    Digraph k3 = bidirectional_cycle(3);
    CHECK(region_fcc_contains(k3, {Rational(1), Rational(1), Rational(1)}));
    // directed 3-cycle: symmetric half point unreachable by fractional cliques
    CHECK_FALSE(region_fcc_contains(directed_cycle(3), {Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
}

TEST_CASE("region vertices lie in the polytope with supporting tight sets") {
    Digraph fig4 = parse_problem("(1|4,5),(2|1,3),(3|2,4),(4|2,3,5),(5|1,2,4)");
    RateRegion region = region_mais(fig4);
    auto verts = region_vertices(region);
    CHECK(!verts.empty());
    for (const auto& v : verts) {
        int tight = 0;
        for (const auto& x : v) {
            CHECK(x >= 0);
            CHECK(x <= 1);
            if (x == 0 || x == 1) ++tight;
        }
        for (const auto& [mask, b] : region.inequalities) {
            Rational sum = 0;
            for (int j = 0; j < region.n; ++j)
                if ((mask >> j) & 1u) sum += v[j];
            CHECK(sum <= b);
            if (sum == b) ++tight;
        }
        CHECK(tight >= region.n);  // a vertex needs n tight constraints
    }
}

TEST_CASE("capacity region certification") {
    CHECK(region_capacity_certified(parse_problem(kThreeMsg)).has_value());
    CHECK_FALSE(region_capacity_certified(directed_cycle(3)).has_value());
    // bidirectional path: perfect skeleton, certified
    Digraph path = parse_problem("(1|2),(2|1,3),(3|2)");
    CHECK(region_capacity_certified(path).has_value());
    // bidirectional pentagon: C5 is not perfect and FCC misses the half point
    CHECK_FALSE(region_capacity_certified(bidirectional_cycle(5)).has_value());
}

TEST_CASE("general lexicographic composition formula") {
    CHECK(general_lex_upper({Rational(5, 2), Rational(1)}, {Rational(1), Rational(2)}) == Rational(7, 2));
    CHECK(general_lex_upper({Rational(3)}, {Rational(2)}) == Rational(6));
    CHECK(general_lex_upper({Rational(2), Rational(1)}, {Rational(3), Rational(3)}) == Rational(6));
    CHECK_THROWS_AS(general_lex_upper({Rational(1), Rational(1)}, {Rational(2), Rational(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(general_lex_upper({Rational(1)}, {Rational(1), Rational(1)}), std::invalid_argument);
}

TEST_CASE("bracket examples") {
    BetaBracket b = beta_bracket(parse_problem(kThreeMsg));
    CHECK(b.tight());
    CHECK(b.lower == Rational(2));

    BetaBracket one = beta_bracket(Digraph(1));
    CHECK(one.tight());
    CHECK(one.lower == Rational(1));

    // six-vertex lexicographic blowup: exactly 4
    Digraph prod = lex_product(parse_problem(kThreeMsg), Digraph(2));
    BetaBracket bp = beta_bracket(prod);
    CHECK(bp.tight());
    CHECK(bp.lower == Rational(4));
}

TEST_CASE("bracket decomposition: acyclic parts add, joins take max") {
    // one-way edge between two cycles: rates add
    Digraph g(6);
    for (int i = 0; i < 3; ++i) g.add_edge(i, (i + 1) % 3);
    for (int i = 3; i < 6; ++i) g.add_edge(i, 3 + (i + 1 - 3) % 3);
    g.add_edge(0, 3);
    BetaBracket b = beta_bracket(g);
    CHECK(b.tight());
    CHECK(b.lower == Rational(4));  // 2 + 2

    // fully bidirectionally joined parts: max
    Digraph j(4);
    j.add_edge(0, 1);
    j.add_edge(1, 0);
    for (int a : {0, 1})
        for (int c : {2, 3}) {
            j.add_edge(a, c);
            j.add_edge(c, a);
        }
    BetaBracket bj = beta_bracket(j);
    CHECK(bj.tight());
    CHECK(bj.lower == Rational(2));  // max(beta of pair, beta of 2 isolated)
}

TEST_CASE("bound chain on every digraph with at most 4 vertices") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& g : testutil::all_labeled_digraphs(n)) {
            Rational lo = beta_mais(g);
            auto fcc = beta_fcc(g);
            REQUIRE(fcc.has_value());
            int cc = beta_clique_cover(g).value();
            int pc = beta_partial_clique(g);
            CHECK(lo <= *fcc);
            CHECK(*fcc <= Rational(cc));
            CHECK(Rational(pc) <= Rational(cc));
            CHECK(lo <= Rational(pc));
        }
}

TEST_CASE("multiplicativity on tight pairs of small problems") {
    auto g2 = enumerate_digraphs(2);
    Budget bud(2'000'000);
    for (const auto& g : g2)
        for (const auto& f : g2) {
            BetaBracket bg = beta_bracket(g, &bud);
            BetaBracket bf = beta_bracket(f, &bud);
            if (!bg.tight() || !bf.tight()) continue;
            BetaBracket bp = beta_bracket(lex_product(g, f), &bud);
            CHECK(bp.tight());
            CHECK(bp.lower == bg.lower * bf.lower);
        }
}
