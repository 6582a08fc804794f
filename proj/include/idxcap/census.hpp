#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idxcap/bounds.hpp"
#include "idxcap/canonical.hpp"
#include "idxcap/graph.hpp"

namespace idxcap {

struct CensusRecord {
    CanonicalForm cert;
    bool p1 = false;      // not strongly connected
    bool p2 = false;      // complement disconnected
    bool p3cert = false;  // non-unicycle edges exist AND their removal is certified harmless
    bool p4 = false;      // degraded side information
    BetaBracket bracket;
};

struct CensusTally {
    std::uint64_t total = 0;
    std::uint64_t p1 = 0;
    std::uint64_t p2 = 0;
    std::uint64_t p3cert = 0;
    std::uint64_t p4 = 0;
    std::uint64_t remaining = 0;  // none of p1, p2, p3cert, p4

    bool operator==(const CensusTally&) const = default;
};

struct CensusOptions {
    int shards = 1;
    int threads = 1;
    std::string checkpoint_path;  // empty: no checkpointing
    bool resume = false;
    std::string jsonl_path;  // empty: no per-instance output
    std::uint64_t instance_budget = 20'000;
    bool with_bracket = true;
    std::uint64_t stop_after = 0;  // graceful stop after ~N instances (0 = run to completion)
};

// Sorted compact canonical keys, one per isomorphism class (n <= 6).
std::vector<std::uint64_t> enumerate_digraph_keys(int n);
// Same classes as full graphs, in key order.
std::vector<Digraph> enumerate_digraphs(int n);
// Inverse of canonical_key64 for graphs produced by the enumeration.
Digraph key_to_digraph(std::uint64_t key);

CensusRecord classify(const Digraph& g, std::uint64_t instance_budget = 20'000, bool with_bracket = true);

CensusTally run_census(int n, const CensusOptions& opts);

std::string tally_csv(const CensusTally& t);

}  // namespace idxcap
