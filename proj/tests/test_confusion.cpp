#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "idxcap/confusion.hpp"
#include "idxcap/invariants.hpp"
#include "test_util.hpp"

using namespace idxcap;

namespace {

const char* kThreeMsg = "(1|2,3),(2|1),(3|1,2)";

}  // namespace

TEST_CASE("message tuple indexing is a bijection in mixed radix") {
    ProblemSpec spec(parse_problem(kThreeMsg), {2, 1, 1});
    REQUIRE(tuple_count(spec) == 16);
    for (std::int64_t i = 0; i < 16; ++i) {
        MessageTuple x = MessageTuple::from_index(spec, i);
        CHECK(x.index(spec) == i);
    }
    // vertex 1 most significant: index 8 = first vertex digit 2, rest 0
    MessageTuple x = MessageTuple::from_index(spec, 8);
    CHECK(x.digits[0] == 2);
    CHECK(x.digits[1] == 0);
    CHECK(x.digits[2] == 0);
    CHECK(x.symbol(spec, 0, 0) == 1);  // binary string "10": position 0 is the high bit
    CHECK(x.symbol(spec, 0, 1) == 0);
    CHECK_THROWS_AS(x.symbol(spec, 1, 1), std::invalid_argument);
}

TEST_CASE("confusability at a position follows the definition") {
    ProblemSpec spec(parse_problem(kThreeMsg));
    auto tup = [&](int a, int b, int c) {
        MessageTuple x;
        x.digits = {a, b, c};
        return x;
    };
    // x=000, z=100 at (j,l)=(1,1): differ in message 1, A_1={2,3} agree
    CHECK(confusable_at(tup(0, 0, 0), tup(1, 0, 0), spec, 0, 0));
    // x=000, z=110 at (j,l)=(2,1): A_2={1} agrees? x_1=0 vs z_1=1 -> no
    CHECK_FALSE(confusable_at(tup(0, 0, 0), tup(1, 1, 0), spec, 1, 0));
    // same pair with matching first digit is confusable at node 2
    CHECK(confusable_at(tup(0, 0, 0), tup(0, 1, 0), spec, 1, 0));
    // x = z is never confusable
    for (int j = 0; j < 3; ++j) CHECK_FALSE(confusable_at(tup(1, 0, 1), tup(1, 0, 1), spec, j, 0));
}

TEST_CASE("confusion components of the three message example") {
    ProblemSpec spec(parse_problem(kThreeMsg));
    UndirectedGraph c1 = confusion_component(spec, 0, 0);
    CHECK(c1.n() == 8);
    CHECK(c1.edge_count() == 4);  // perfect matching: flip bit 1, bits 2,3 fixed
    for (int v = 0; v < 8; ++v) CHECK(c1.degree(v) == 1);

    UndirectedGraph c3 = confusion_component(spec, 2, 0);
    CHECK(c3.edge_count() == 4);  // A_3 = {1,2} forces bits 1,2 equal
    // matching pairs tuples differing only in the last bit
    for (int v = 0; v < 8; ++v) CHECK(c3.has_edge(v, v ^ 1));

    ProblemSpec single(parse_problem("(1|-)"));
    UndirectedGraph g1 = confusion_graph(single);
    CHECK(g1.n() == 2);
    CHECK(g1.edge_count() == 1);
}

TEST_CASE("confusion graph is the union of its components") {
    std::mt19937 rng(0);
    for (int rep = 0; rep < 20; ++rep) {
        Digraph g = testutil::random_digraph(3, rng);
        ProblemSpec spec(g, {2, 1, 1});
        UndirectedGraph gamma = confusion_graph(spec);
        UndirectedGraph merged(gamma.n());
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < spec.t[j]; ++l) {
                UndirectedGraph comp = confusion_component(spec, j, l);
                for (int a = 0; a < comp.n(); ++a)
                    for (int b = a + 1; b < comp.n(); ++b)
                        if (comp.has_edge(a, b) && !merged.has_edge(a, b)) merged.add_edge(a, b);
            }
        CHECK(gamma == merged);
    }
}

TEST_CASE("two independent messages give the complete graph") {
    ProblemSpec spec(parse_problem("(1|-),(2|-)"));
    UndirectedGraph gamma = confusion_graph(spec);
    CHECK(gamma.n() == 4);
    CHECK(gamma.edge_count() == 6);
}

TEST_CASE("every confusion component is perfect") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& g : testutil::all_labeled_digraphs(n)) {
            ProblemSpec spec(g);
            for (int j = 0; j < n; ++j) CHECK(is_perfect(confusion_component(spec, j, 0)));
        }
    std::mt19937 rng(1);
    for (int rep = 0; rep < 100; ++rep) {
        ProblemSpec spec(testutil::random_digraph(3, rng), {2, 1, 1});
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < spec.t[j]; ++l) CHECK(is_perfect(confusion_component(spec, j, l)));
    }
}

TEST_CASE("chromatic number of the union at most the product over components") {
    std::mt19937 rng(2);
    auto check_spec = [](const ProblemSpec& spec) {
        BoundedInt total = chi(confusion_graph(spec));
        REQUIRE(total.exact());
        long long prod = 1;
        for (int j = 0; j < spec.graph.n(); ++j)
            for (int l = 0; l < spec.t[j]; ++l) {
                BoundedInt part = chi(confusion_component(spec, j, l));
                REQUIRE(part.exact());
                prod *= part.value();
            }
        CHECK(total.value() <= prod);
    };
    for (const auto& g : testutil::all_labeled_digraphs(3)) check_spec(ProblemSpec(g));
    for (int rep = 0; rep < 10; ++rep) check_spec(ProblemSpec(testutil::random_digraph(3, rng), {2, 1, 1}));
    check_spec(ProblemSpec(parse_problem(kThreeMsg), {2, 2, 2}));
}

TEST_CASE("chi bounded by total length times omega") {
    auto check_spec = [](const ProblemSpec& spec) {
        UndirectedGraph gamma = confusion_graph(spec);
        BoundedInt x = chi(gamma), w = omega(gamma);
        REQUIRE(x.exact());
        REQUIRE(w.exact());
        int total_len = 0;
        for (int tj : spec.t) total_len += tj;
        CHECK(w.value() <= x.value());
        CHECK(x.value() <= total_len * w.value());
    };
    for (const auto& g : testutil::all_labeled_digraphs(3)) {
        check_spec(ProblemSpec(g));
        check_spec(ProblemSpec(g, {2, 2, 2}));
    }
}

TEST_CASE("vertex transitivity and the alpha chi_f identity") {
    for (const auto& g : testutil::all_labeled_digraphs(3)) {
        ProblemSpec spec(g);
        UndirectedGraph gamma = confusion_graph(spec);
        CHECK(is_vertex_transitive(gamma));
        BoundedInt a = alpha(gamma);
        REQUIRE(a.exact());
        auto f = chi_fractional(gamma, true);
        REQUIRE(f.has_value());
        CHECK(Rational(a.value()) * *f == Rational(gamma.n()));
    }
}

TEST_CASE("size cap is enforced") {
    Digraph big(13);
    ProblemSpec spec(big);
    CHECK_THROWS_AS(confusion_graph(spec), std::invalid_argument);
}

TEST_CASE("edge list export is parseable and ordered") {
    ProblemSpec spec(parse_problem(kThreeMsg));
    std::string s = edge_list(confusion_graph(spec));
    std::istringstream is(s);
    int a, b, lines = 0;
    while (is >> a >> b) {
        CHECK(a < b);
        CHECK(b < 8);
        ++lines;
    }
    CHECK(lines == confusion_graph(spec).edge_count());
}
