#pragma once

#include "ramsey/checkmode.hpp"
#include "ramsey/coloring.hpp"
#include "ramsey/hypergraph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ramsey {

// binomial random k-graph: each k-subset of [1, n] is an edge independently
// with probability p, derived from (seed, subset rank) alone
KGraph sample_kgraph(int n, int k, double p, std::uint64_t seed);
KGraph sample_3graph(int n, double p, std::uint64_t seed);

struct PartitionWitness {
    std::vector<std::vector<int>> parts;  // disjoint, covering [1, n]
    long long cross_sum = 0;
};

// recomputes sum over part triples {i,j,k} with e_G(V_i,V_j,V_k) > 0 of
// |V_i||V_j||V_k|
long long cross_sum(const KGraph& G, const std::vector<std::vector<int>>& parts);

struct GmResult {
    CheckStatus status = CheckStatus::refused;
    std::optional<PartitionWitness> witness;
    std::string record;
};

// Membership test for the partition-pseudorandomness class: G passes iff
// every partition of V(G) into at most s parts of size <= n/m has
// cross_sum > theta * C(n, 3). A fail returns a concrete refuting
// partition. A Monte Carlo pass only means "no violation found".
GmResult check_Gm(const KGraph& G, long m, long s, double theta,
                  const CheckMode& mode, long long enum_budget = 50'000'000);

struct GoodResult {
    CheckStatus status = CheckStatus::refused;
    std::vector<std::vector<int>> witness_sets;  // U, W_1, ..., W_{k-3}
    std::optional<PartitionWitness> witness_partition;
    std::string record;
};

// (alpha, m)-goodness: every choice of pairwise disjoint U, W_1..W_{k-3}
// of size >= alpha*n reduces to a 3-graph passing check_Gm.
GoodResult check_good(const KGraph& H, double alpha, long m, long s,
                      double theta, const CheckMode& mode,
                      long long enum_budget = 50'000'000);

struct BuildHRResult {
    bool ok = false;
    KGraph graph;
    int attempts = 0;
    std::uint64_t seed_used = 0;
    std::string record;
};

// Samples a binomial k-graph on N = 2n vertices with p = Cm / (2 N^{k-1}),
// checks the edge count and (alpha/2, m)-goodness, trims the N/2 vertices
// of largest degree, and relabels to [1, n]. gm_s is the part-count cap
// used by the goodness check. Retries with derived seeds.
BuildHRResult build_HR(int k, double alpha, long m, int n,
                       const ConstructionConstants& cc, std::uint64_t seed,
                       int max_retries, long gm_s, const CheckMode& goodness_mode);

// random graph with maximum degree <= d (configuration model with loop and
// multi-edge removal)
Graph2 sample_F(int M, int d, std::uint64_t seed);

struct ExpansionResult {
    CheckStatus status = CheckStatus::refused;
    std::vector<int> witness;  // violating U
    std::string record;
};

// For every U with |U| >= eps*M, at most eps*M vertices may have fewer
// than k_neighbors neighbors in U.
ExpansionResult check_F_expansion(const Graph2& F, int k_neighbors, double eps,
                                  const CheckMode& mode,
                                  long long enum_budget = 50'000'000);

// spread s-uniform hypergraph candidate: target_edges random s-subsets of
// [1, n], deduplicated
KGraph sample_T(int n, int s, int target_edges, std::uint64_t seed);

struct SpreadResult {
    CheckStatus status = CheckStatus::refused;
    std::string violated;  // "degree" | "overlap" | "proportional"
    std::string witness;
    std::string record;
};

// (i) max degree <= C_cap; (ii) pairwise block overlaps < eps*s;
// (iii) for sets A with |A| >= eps*n, at most eps*e(T) blocks deviate from
// proportional intersection by more than eps*s.
SpreadResult check_T(const KGraph& T, long C_cap, double eps,
                     const CheckMode& mode, long long enum_budget = 50'000'000);

struct BuildHParams {
    long m = 4;
    double alpha = 0.25;     // goodness parameter for H_R
    int s_block = 12;        // block size of the spread hypergraph
    int t_edges = 6;         // blocks sampled for T
    int f_degree = 4;        // max degree of the expander component
    int f_k_neighbors = 2;   // expansion neighbor count
    double eps = 0.25;       // check parameter for T and F
    long t_degree_cap = 4;
    long gm_s = 16;          // part-count cap for goodness checks
    int max_retries = 20;
    CheckMode check_mode = CheckMode::MonteCarlo(200, 0);
    int delta_target = 0;    // 0 = audit only, else assert Delta(H) <= target
};

struct BuildHResult {
    bool ok = false;
    std::string failed_stage;  // set when !ok
    KGraph H, HR, HE;
    KGraph blocks;  // the verified spread hypergraph
    Graph2 F;       // the verified expander template
    std::string record;
};

// Full assembly: H_R from build_HR, blocks from a verified T, a verified F
// copied onto each block, H_E the lift of that family, H the union.
BuildHResult build_H(int k, int n, const ConstructionConstants& cc,
                     const BuildHParams& params, std::uint64_t seed);

}  // namespace ramsey
