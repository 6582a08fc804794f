#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "idxcap/census.hpp"
#include "test_util.hpp"

using namespace idxcap;

namespace {

std::string tmp_path(const char* name) { return std::string("/tmp/idxcap_test_") + name; }

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("isomorphism class counts for small orders") {
    CHECK(enumerate_digraph_keys(1).size() == 1);
    CHECK(enumerate_digraph_keys(2).size() == 3);
    CHECK(enumerate_digraph_keys(3).size() == 16);
    CHECK(enumerate_digraph_keys(4).size() == 218);
}

TEST_CASE("keys round trip through graphs and stay canonical") {
    for (int n = 1; n <= 4; ++n) {
        auto keys = enumerate_digraph_keys(n);
        auto graphs = enumerate_digraphs(n);
        REQUIRE(keys.size() == graphs.size());
        for (std::size_t i = 0; i < keys.size(); ++i) {
            CHECK(graphs[i].n() == n);
            CHECK(canonical_key64(graphs[i]) == keys[i]);
            CHECK(canonical_key64(key_to_digraph(keys[i])) == keys[i]);
        }
        std::set<std::uint64_t> uniq(keys.begin(), keys.end());
        CHECK(uniq.size() == keys.size());
    }
}

TEST_CASE("classification flags on worked examples") {
    // edgeless pair: not strongly connected
    CensusRecord iso = classify(Digraph(2));
    CHECK(iso.p1);
    CHECK_FALSE(iso.p2);

    // bidirectional pair: strongly connected, complement disconnected
    Digraph pair = parse_problem("(1|2),(2|1)");
    CensusRecord pr = classify(pair);
    CHECK_FALSE(pr.p1);
    CHECK(pr.p2);

    // degraded side information: A_3 inside A_6
    Digraph ex2 = parse_problem("(1|4,5),(2|5,6),(3|5),(4|1,6),(5|1,2),(6|2,3,4,5)");
    CHECK(classify(ex2).p4);

    // three-message example: non-unicycle edge removable with a certificate
    CensusRecord three = classify(parse_problem("(1|2,3),(2|1),(3|1,2)"));
    CHECK(three.p3cert);
    CHECK(three.p4);
}

TEST_CASE("strong connectivity and complement disconnection exclude each other") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& g : testutil::all_labeled_digraphs(n)) {
            bool p1 = !is_strongly_connected(g);
            bool p2 = !is_connected(underlying(complement(g)));
            CHECK_FALSE((p1 && p2));
        }
}

TEST_CASE("census totals match the class counts") {
    for (int n = 1; n <= 4; ++n) {
        CensusOptions opts;
        opts.with_bracket = (n <= 3);
        CensusTally t = run_census(n, opts);
        CHECK(t.total == enumerate_digraph_keys(n).size());
        CHECK(t.p1 + t.p2 <= t.total);
        CHECK(t.remaining <= t.total);
    }
}

TEST_CASE("census n=3 reference tallies") {
    CensusOptions opts;
    CensusTally t = run_census(3, opts);
    CHECK(t.total == 16);
    CHECK(t.p1 == 11);
    CHECK(t.p2 == 3);
    CHECK(t.p3cert == 11);
    CHECK(t.p4 == 10);
    CHECK(t.remaining == 1);
}

TEST_CASE("tally is invariant under sharding and threading") {
    CensusOptions base;
    CensusTally ref = run_census(4, base);
    for (int shards : {4, 16}) {
        CensusOptions opts;
        opts.shards = shards;
        opts.threads = 4;
        CHECK(run_census(4, opts) == ref);
    }
}

TEST_CASE("checkpointed run resumes to an identical tally") {
    std::string ck = tmp_path("resume.ck");
    std::remove(ck.c_str());

    CensusOptions full;
    full.shards = 4;
    CensusTally ref = run_census(4, full);

    CensusOptions part;
    part.shards = 4;
    part.checkpoint_path = ck;
    part.stop_after = 60;
    CensusTally partial = run_census(4, part);
    CHECK(partial.total < ref.total);  // stopped early

    CensusOptions rest;
    rest.shards = 4;
    rest.checkpoint_path = ck;
    rest.resume = true;
    CensusTally resumed = run_census(4, rest);
    CHECK(resumed == ref);
    std::remove(ck.c_str());
}

TEST_CASE("corrupted checkpoint is rejected") {
    std::string ck = tmp_path("corrupt.ck");
    std::remove(ck.c_str());
    CensusOptions part;
    part.checkpoint_path = ck;
    part.stop_after = 4;
    run_census(3, part);

    std::string body = slurp(ck);
    REQUIRE(!body.empty());
    // flip a tally digit without fixing the content hash
    std::size_t pos = body.find("shard 0 ");
    REQUIRE(pos != std::string::npos);
    body[pos + 8] = (body[pos + 8] == '9') ? '8' : '9';
    {
        std::ofstream f(ck, std::ios::trunc);
        f << body;
    }
    CensusOptions rest;
    rest.checkpoint_path = ck;
    rest.resume = true;
    CHECK_THROWS_AS(run_census(3, rest), std::runtime_error);
    std::remove(ck.c_str());
}

TEST_CASE("per-instance output has one line per class") {
    std::string jl = tmp_path("census.jsonl");
    std::remove(jl.c_str());
    CensusOptions opts;
    opts.jsonl_path = jl;
    run_census(3, opts);
    std::ifstream f(jl);
    REQUIRE(f.good());
    std::string line;
    int lines = 0;
    while (std::getline(f, line)) {
        CHECK(line.find("\"cert\"") != std::string::npos);
        ++lines;
    }
    CHECK(lines == 16);
    std::remove(jl.c_str());
}

TEST_CASE("csv export lists every tally field") {
    CensusTally t = run_census(2, CensusOptions{});
    std::string csv = tally_csv(t);
    for (const char* field : {"total", "p1", "p2", "p3cert", "p4", "remaining"})
        CHECK(csv.find(field) != std::string::npos);
}
