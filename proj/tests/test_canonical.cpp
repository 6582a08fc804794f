#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "idxcap/canonical.hpp"
#include "test_util.hpp"

using namespace idxcap;

TEST_CASE("orbit counts by brute force over all labeled digraphs") {
    // independent oracle: count distinct canonical forms over the full
    // labeled space and compare with the known class counts
    int expected[] = {0, 1, 3, 16, 218};
    for (int n = 1; n <= 4; ++n) {
        std::set<CanonicalForm> classes;
        for (const auto& g : testutil::all_labeled_digraphs(n)) classes.insert(canonical_form(g));
        CHECK(static_cast<int>(classes.size()) == expected[n]);
    }
}

TEST_CASE("canonical form is permutation invariant") {
    std::mt19937 rng(0);
    for (int n = 4; n <= 7; ++n) {
        for (int rep = 0; rep < 50; ++rep) {
            Digraph g = testutil::random_digraph(n, rng);
            std::vector<int> perm(n);
            for (int i = 0; i < n; ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            CHECK(canonical_form(g) == canonical_form(testutil::permuted(g, perm)));
        }
    }
}

TEST_CASE("canonical form separates nonisomorphic graphs") {
    // exhaustive at n=3: forms equal iff brute-force isomorphic
    auto graphs = testutil::all_labeled_digraphs(3);
    std::vector<int> perm{0, 1, 2};
    std::vector<std::vector<int>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    for (std::size_t a = 0; a < graphs.size(); a += 7)
        for (std::size_t b = a; b < graphs.size(); b += 5) {
            bool iso = false;
            for (const auto& p : perms)
                if (testutil::permuted(graphs[a], p) == graphs[b]) {
                    iso = true;
                    break;
                }
            CHECK((canonical_form(graphs[a]) == canonical_form(graphs[b])) == iso);
        }
}

TEST_CASE("canonical graph realizes its own form") {
    std::mt19937 rng(1);
    for (int rep = 0; rep < 30; ++rep) {
        Digraph g = testutil::random_digraph(6, rng);
        Digraph c = canonical_graph(g);
        CHECK(canonical_form(c) == canonical_form(g));
        // the canonical relabeling's adjacency matches the form bits
        CanonicalForm f = canonical_form(g);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                int bit = i * 6 + j;
                bool set = (f.bits[bit >> 6] >> (63 - (bit & 63))) & 1u;
                CHECK(c.has_edge(i, j) == (i != j && set));
            }
    }
}

TEST_CASE("compact key agrees with the full form") {
    std::mt19937 rng(2);
    std::set<std::uint64_t> keys;
    std::set<CanonicalForm> forms;
    for (int rep = 0; rep < 200; ++rep) {
        Digraph g = testutil::random_digraph(5, rng);
        keys.insert(canonical_key64(g));
        forms.insert(canonical_form(g));
    }
    CHECK(keys.size() == forms.size());
    Digraph big(8);
    CHECK_THROWS_AS(canonical_key64(big), std::invalid_argument);
}
