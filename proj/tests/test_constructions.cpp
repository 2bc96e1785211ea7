#include <doctest.h>

#include "ramsey/constructions.hpp"
#include "ramsey/hypergraph.hpp"
#include "ramsey/rng.hpp"

#include <cmath>

using namespace ramsey;

TEST_CASE("samplers: degenerate probabilities") {
    CHECK(sample_3graph(8, 0.0, 1).edges.empty());
    CHECK(sample_3graph(6, 1.0, 1) == complete_kgraph(6, 3));
    KGraph single = sample_kgraph(4, 4, 1.0, 1);
    CHECK(single.edges == std::vector<std::vector<int>>{{1, 2, 3, 4}});
    CHECK_THROWS_AS(sample_kgraph(5, 3, 1.5, 1), std::invalid_argument);
}

TEST_CASE("samplers: determinism and concentration") {
    CHECK(sample_3graph(20, 0.3, 7) == sample_3graph(20, 0.3, 7));
    CHECK(sample_3graph(20, 0.3, 7) != sample_3graph(20, 0.3, 8));

    // n=30, p=0.1: mean 406, sd ~19.1; allow 4 sd
    double mean = 0.1 * static_cast<double>(binomial(30, 3));
    double sd = std::sqrt(mean * 0.9);
    auto g = sample_3graph(30, 0.1, 123);
    CHECK(std::abs(static_cast<double>(g.edges.size()) - mean) < 4 * sd);

    // N=20, k=4: mean 242.25, sd ~15.2
    double mean4 = 0.05 * static_cast<double>(binomial(20, 4));
    double sd4 = std::sqrt(mean4 * 0.95);
    auto g4 = sample_kgraph(20, 4, 0.05, 99);
    CHECK(std::abs(static_cast<double>(g4.edges.size()) - mean4) < 4 * sd4);
}

TEST_CASE("cross_sum") {
    KGraph k6 = complete_kgraph(6, 3);
    std::vector<std::vector<int>> pairs{{1, 2}, {3, 4}, {5, 6}};
    CHECK(cross_sum(k6, pairs) == 8);

    KGraph edgeless(3, 6);
    CHECK(cross_sum(edgeless, pairs) == 0);

    // singleton partition of K_5: every edge crosses, crossSum = e(G)
    KGraph k5 = complete_kgraph(5, 3);
    std::vector<std::vector<int>> singles{{1}, {2}, {3}, {4}, {5}};
    CHECK(cross_sum(k5, singles) == 10);

    CHECK_THROWS_AS(cross_sum(k6, {{1, 2}, {2, 3}, {4, 5, 6}}), std::invalid_argument);
    CHECK_THROWS_AS(cross_sum(k6, {{1, 2}, {3, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(cross_sum(k6, {{1, 2, 7}, {3, 4}, {5, 6}}), std::invalid_argument);
}

TEST_CASE("check_Gm on the frozen examples") {
    // K_6 with m=3, s=3: pairs give crossSum 8 <= 0.55*20 = 11
    GmResult r = check_Gm(complete_kgraph(6, 3), 3, 3, 0.55, CheckMode::Exhaustive());
    CHECK(r.status == CheckStatus::fail);
    REQUIRE(r.witness.has_value());
    CHECK(static_cast<double>(r.witness->cross_sum) <=
          0.55 * static_cast<double>(binomial(6, 3)));
    // the witness must be independently recomputable
    CHECK(cross_sum(complete_kgraph(6, 3), r.witness->parts) == r.witness->cross_sum);

    // K_5 with m=5, s=5: only the singleton partition is admissible; 10 > 5.5
    GmResult p = check_Gm(complete_kgraph(5, 3), 5, 5, 0.55, CheckMode::Exhaustive());
    CHECK(p.status == CheckStatus::pass);
    CHECK(p.record.find("exhaustive") != std::string::npos);

    // edgeless graph always fails
    GmResult e = check_Gm(KGraph(3, 6), 3, 6, 0.55, CheckMode::Exhaustive());
    CHECK(e.status == CheckStatus::fail);
    CHECK(e.witness->cross_sum == 0);
}

TEST_CASE("check_Gm vacuous and refused cases") {
    // s * floor(n/m) < n: no admissible partition
    GmResult v = check_Gm(KGraph(3, 10), 5, 3, 0.55, CheckMode::Exhaustive());
    CHECK(v.status == CheckStatus::pass);
    CHECK(v.record.find("no admissible partition") != std::string::npos);

    GmResult ref = check_Gm(complete_kgraph(12, 3), 3, 6, 0.55,
                            CheckMode::Exhaustive(), 100);
    CHECK(ref.status == CheckStatus::refused);
}

TEST_CASE("check_Gm Monte Carlo agrees with exhaustive on small instances") {
    Rng rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 5 + static_cast<int>(rng.next_below(3));  // 5..7
        double p = 0.2 + 0.6 * rng.next_double();
        KGraph G = sample_3graph(n, p, rng.next_u64());
        GmResult ex = check_Gm(G, 2, 4, 0.55, CheckMode::Exhaustive());
        GmResult mc = check_Gm(G, 2, 4, 0.55, CheckMode::MonteCarlo(400, trial));
        if (mc.status == CheckStatus::fail) {
            // any Monte Carlo fail is a genuine refutation
            CHECK(ex.status == CheckStatus::fail);
            CHECK(cross_sum(G, mc.witness->parts) == mc.witness->cross_sum);
        }
        if (ex.status == CheckStatus::pass) CHECK(mc.status == CheckStatus::pass);
    }
}

TEST_CASE("check_good at k=3 delegates to check_Gm") {
    KGraph k6 = complete_kgraph(6, 3);
    GoodResult g = check_good(k6, 0.5, 3, 3, 0.55, CheckMode::Exhaustive());
    GmResult gm = check_Gm(k6, 3, 3, 0.55, CheckMode::Exhaustive());
    CHECK(g.status == gm.status);
    REQUIRE(g.witness_partition.has_value());
    CHECK(g.witness_partition->cross_sum == gm.witness->cross_sum);

    KGraph k5 = complete_kgraph(5, 3);
    CHECK(check_good(k5, 0.5, 5, 5, 0.55, CheckMode::Exhaustive()).status ==
          CheckStatus::pass);
}

TEST_CASE("check_good on 4-graphs") {
    // edgeless: every reduction is edgeless, so the first candidate refutes
    KGraph empty(4, 6);
    GoodResult e = check_good(empty, 1.0 / 6.0, 1, 3, 0.55, CheckMode::Exhaustive());
    CHECK(e.status == CheckStatus::fail);
    REQUIRE(e.witness_sets.size() == 2);  // U and W_1
    CHECK(e.witness_partition->cross_sum == 0);
    // the witness reduction really is a refutation
    KGraph red = reduce(empty, e.witness_sets[0], {e.witness_sets[1]});
    CHECK(check_Gm(red, 1, 3, 0.55, CheckMode::Exhaustive()).status ==
          CheckStatus::fail);

    // complete 4-graph, |U|=5, |W|=1: reduction is K_5^(3); with m=|U| the
    // singleton partition is forced and passes, mirroring check_Gm
    KGraph full = complete_kgraph(6, 4);
    GoodResult f = check_good(full, 1.0 / 6.0, 5, 5, 0.55, CheckMode::Exhaustive());
    // some candidate has |U| < 5 where partitions are admissible; just require
    // agreement with direct reduction checks on every outcome
    if (f.status == CheckStatus::fail) {
        KGraph fr = reduce(full, f.witness_sets[0], {f.witness_sets[1]});
        CHECK(check_Gm(fr, 5, 5, 0.55, CheckMode::Exhaustive()).status ==
              CheckStatus::fail);
    }

    GoodResult ref = check_good(full, 0.1, 1, 3, 0.55, CheckMode::Exhaustive(), 100);
    CHECK(ref.status == CheckStatus::refused);
}

TEST_CASE("build_HR") {
    auto cc = ConstructionConstants::desk(3, 8);
    cc.goodness_C = 50.0;  // density high enough for the membership check
    BuildHRResult r = build_HR(3, 0.5, 8, 10, cc, 42, 20, 16,
                               CheckMode::MonteCarlo(50, 0));
    REQUIRE(r.ok);
    CHECK(r.graph.n == 10);
    CHECK(r.graph.k == 3);
    CHECK(static_cast<double>(r.graph.max_degree()) <= cc.goodness_C * 8);
    CHECK(r.record.find("result pass") != std::string::npos);

    // determinism
    BuildHRResult r2 = build_HR(3, 0.5, 8, 10, cc, 42, 20, 16,
                                CheckMode::MonteCarlo(50, 0));
    CHECK(r2.ok);
    CHECK(serialize(r2.graph) == serialize(r.graph));
    CHECK(r2.attempts == r.attempts);
}

TEST_CASE("sample_F") {
    Graph2 e0 = sample_F(6, 0, 1);
    CHECK(e0.edges.empty());
    CHECK(e0.vertices.size() == 6);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph2 F = sample_F(64, 8, seed);
        int maxdeg = 0;
        auto adj = F.adjacency();
        for (int v : F.vertices)
            maxdeg = std::max(maxdeg, static_cast<int>(adj[static_cast<std::size_t>(v)].size()));
        CHECK(maxdeg <= 8);
        // no loops, no duplicate edges
        for (const auto& [a, b] : F.edges) CHECK(a < b);
    }
    // odd M*d is handled by the near-regular model
    Graph2 odd = sample_F(5, 3, 9);
    CHECK(odd.vertices.size() == 5);
}

TEST_CASE("check_F_expansion") {
    // complete graph: every vertex has >= 2 neighbors in any U with |U| >= 3
    Graph2 kM;
    kM.n = 8;
    for (int v = 1; v <= 8; ++v) kM.vertices.push_back(v);
    for (int a = 1; a <= 8; ++a)
        for (int b = a + 1; b <= 8; ++b) kM.edges.push_back({a, b});
    kM.canonicalize();
    CHECK(check_F_expansion(kM, 2, 0.4, CheckMode::Exhaustive()).status ==
          CheckStatus::pass);

    // edgeless: every vertex has 0 neighbors everywhere
    Graph2 empty;
    empty.n = 8;
    for (int v = 1; v <= 8; ++v) empty.vertices.push_back(v);
    empty.canonicalize();
    ExpansionResult f = check_F_expansion(empty, 1, 0.4, CheckMode::Exhaustive());
    CHECK(f.status == CheckStatus::fail);
    CHECK(!f.witness.empty());

    ExpansionResult mc = check_F_expansion(empty, 1, 0.4, CheckMode::MonteCarlo(20, 3));
    CHECK(mc.status == CheckStatus::fail);

    ExpansionResult ref =
        check_F_expansion(kM, 2, 0.01, CheckMode::Exhaustive(), 10);
    CHECK(ref.status == CheckStatus::refused);
}

TEST_CASE("sample_T") {
    KGraph one = sample_T(10, 4, 1, 5);
    CHECK(one.edges.size() == 1);
    CHECK(one.k == 4);

    KGraph all = sample_T(5, 5, 10, 5);
    CHECK(all.edges.size() == 1);  // only one 5-subset of [5]

    KGraph t = sample_T(200, 20, 30, 7);
    CHECK(t.edges.size() == 30);
    CHECK(sample_T(200, 20, 30, 7) == t);
    CHECK_THROWS_AS(sample_T(4, 5, 1, 1), std::invalid_argument);
}

TEST_CASE("check_T") {
    // single block: (ii) vacuous
    KGraph one = sample_T(12, 4, 1, 3);
    CHECK(check_T(one, 1, 0.5, CheckMode::MonteCarlo(50, 1)).status ==
          CheckStatus::pass);

    // duplicate-heavy T: two blocks sharing all vertices is impossible after
    // dedup, so force an overlap failure with nearly identical blocks
    KGraph overlap(4, 6);
    overlap.edges = {{1, 2, 3, 4}, {1, 2, 3, 5}};
    overlap.canonicalize();
    SpreadResult so = check_T(overlap, 4, 0.5, CheckMode::MonteCarlo(50, 1));
    CHECK(so.status == CheckStatus::fail);
    CHECK(so.violated == "overlap");

    // degree cap violation
    SpreadResult sd = check_T(overlap, 1, 0.99, CheckMode::MonteCarlo(50, 1));
    CHECK(sd.status == CheckStatus::fail);
    CHECK(sd.violated == "degree");
}

TEST_CASE("build_H") {
    auto cc = ConstructionConstants::desk(3, 8);
    cc.goodness_C = 50.0;
    BuildHParams params;
    params.m = 8;
    params.alpha = 0.5;
    params.s_block = 5;
    params.t_edges = 2;
    params.f_degree = 2;
    params.f_k_neighbors = 1;
    params.eps = 0.5;
    params.t_degree_cap = 2;
    params.gm_s = 16;
    params.max_retries = 40;
    params.check_mode = CheckMode::MonteCarlo(50, 0);

    BuildHResult r = build_H(3, 10, cc, params, 2024);
    REQUIRE_MESSAGE(r.ok, r.failed_stage, "\n", r.record);
    CHECK(r.H.n == 10);
    CHECK(r.H == graph_union(r.HR, r.HE));
    CHECK(r.H.max_degree() <= r.HR.max_degree() + r.HE.max_degree());
    double he_bound = static_cast<double>(r.blocks.max_degree()) * 2 *
                      params.s_block * std::pow(params.f_degree, 3 - 2);
    CHECK(static_cast<double>(r.HE.max_degree()) <= he_bound);

    // determinism
    BuildHResult r2 = build_H(3, 10, cc, params, 2024);
    CHECK(r2.ok);
    CHECK(serialize(r2.H) == serialize(r.H));

    // block size above n is rejected up front
    params.s_block = 99;
    BuildHResult bad = build_H(3, 10, cc, params, 2024);
    CHECK(!bad.ok);
    CHECK(bad.failed_stage == "parameters");
}
