#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idxcap/budget.hpp"
#include "idxcap/graph.hpp"
#include "idxcap/rational.hpp"

namespace idxcap {

// Exact-rational bracket on the broadcast rate. Theta-derived uppers are
// carried separately as reals with a tolerance and never declare tightness.
struct BetaBracket {
    Rational lower;
    Rational upper;
    std::string lower_src;  // MAIS / LEX / composition tags
    std::string upper_src;  // CC / FCC / PC / CONF_t / LEX / composition tags
    double theta_upper = 0.0;  // informational; 0 when not computed
    bool has_theta = false;

    bool tight() const { return lower == upper; }
};

// Outer rate region: sum_{j in S} R_j <= b per inequality, plus implicit
// 0 <= R_j <= 1. Dominated inequalities removed, sorted canonically.
struct RateRegion {
    int n = 0;
    std::vector<std::pair<std::uint32_t, Rational>> inequalities;

    bool operator==(const RateRegion& o) const = default;
};

Rational beta_mais(const Digraph& g);
BoundedInt beta_clique_cover(const Digraph& g, Budget* budget = nullptr);
std::optional<Rational> beta_fcc(const Digraph& g, Budget* budget = nullptr);

// Minimum over vertex partitions of the sum of kappa over the parts (subset
// dynamic program, n <= 13).
int beta_partial_clique(const Digraph& g);

// (1/t) * ceil(log2 chi(Gamma_t)): a valid upper bound for every t. Uses the
// chi upper bracket, so it stays valid under budget exhaustion.
Rational beta_confusion_upper(const ProblemSpec& spec, int t, Budget* budget = nullptr);
// (1/t) * log2 omega(Gamma_t): convergent estimate only, not a bound.
double beta_confusion_seq(const ProblemSpec& spec, int t, Budget* budget = nullptr);
// (1/t) * log2 theta(complement(Gamma_t)): valid upper bound for every t.
double beta_theta_upper(const ProblemSpec& spec, int t);

// Inequalities (S, 1) for every maximal acyclic induced vertex set (n <= 10).
RateRegion region_mais(const Digraph& g);

// Exact feasibility of the fractional clique cover region at rate point r.
bool region_fcc_contains(const Digraph& g, const std::vector<Rational>& r);

// Certified capacity region: returns region_mais(g) when either every vertex
// of the MAIS polytope lies in the fractional clique cover region, or the
// unicycle reduction of g is bidirectional with a perfect underlying graph.
std::optional<RateRegion> region_capacity_certified(const Digraph& g);

// Composition bound for generalized lexicographic products:
// betas_g[i] = beta of g restricted to blocks i+1..m (betas_g[0] = beta(g));
// betas_f must be sorted ascending.
Rational general_lex_upper(const std::vector<Rational>& betas_g, const std::vector<Rational>& betas_f);

// Aggregate bracket: decomposes by strong connectivity (parts add), then by
// complement connectivity (parts take max), then searches lexicographic
// factorizations (tight factors multiply); base bounds MAIS / CC / FCC / PC /
// confusion.
BetaBracket beta_bracket(const Digraph& g, Budget* budget = nullptr);

// All vertices of the polytope {0 <= R <= 1, region inequalities} (n <= 8).
std::vector<std::vector<Rational>> region_vertices(const RateRegion& region);

}  // namespace idxcap
