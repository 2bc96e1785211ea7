#include <doctest.h>

#include "ramsey/embedding.hpp"
#include "ramsey/rng.hpp"

#include <filesystem>

using namespace ramsey;

namespace {

// tiny spec whose base verification is vacuous (no clique of size M_3+1
// exists and the subset loop starts above s), so construction always succeeds
ColoringSpec tiny_spec(int k, long m, std::uint64_t seed = 5) {
    auto cc = ConstructionConstants::desk(k, m);
    long s = 1L << cc.base_exponent();
    return ColoringSpec::make(k, cc, seed, /*clique_bound=*/s,
                              /*sub_density=*/0.51, /*min_subset_size=*/s + 1,
                              CheckMode::Exhaustive(), 5);
}

KGraph make(int k, int n, std::vector<std::vector<int>> edges) {
    KGraph g(k, n);
    g.edges = std::move(edges);
    g.canonicalize();
    return g;
}

// reference search: enumerate every multiplicity-bounded assignment
bool naive_mono_exists(const KGraph& H, const ColoringSpec& spec, long b,
                       Color color) {
    long M = spec.M(H.k).convert_to<long>();
    std::vector<Nat> target(static_cast<std::size_t>(H.n));
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == H.n) {
            Embedding h{target, b};
            if (!is_embedding(h, M)) return false;
            Classification cls = classify_embedding(H, h, spec);
            return color == Color::red ? cls.mono_red : cls.mono_blue;
        }
        for (long x = 0; x < M; ++x) {
            target[static_cast<std::size_t>(v)] = x;
            if (rec(v + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

}  // namespace

TEST_CASE("is_embedding") {
    CHECK(is_embedding({{0, 1, 2}, 1}, 4));
    CHECK(!is_embedding({{0, 1, 4}, 1}, 4));   // out of range
    CHECK(!is_embedding({{0, 1, 1}, 1}, 4));   // multiplicity over b
    CHECK(is_embedding({{0, 1, 1}, 2}, 4));
    CHECK(!is_embedding({{0}, 0}, 4));         // b must be >= 1
    CHECK(is_embedding({{}, 1}, 4));
}

TEST_CASE("classify_embedding") {
    ColoringSpec spec = tiny_spec(3, 2);  // M_3 = 4
    KGraph H = make(3, 3, {{1, 2, 3}});

    Embedding distinct{{0, 1, 2}, 1};
    Classification c = classify_embedding(H, distinct, spec);
    Color expect = spec.phi3({0, 1, 2});
    CHECK(c.mono_red == (expect == Color::red));
    CHECK(c.mono_blue == (expect == Color::blue));
    CHECK(c.almost_red == c.mono_red);
    CHECK(c.almost_blue == c.mono_blue);

    // collapsed image: the edge is red (repeat rule) but exempt from "almost"
    Embedding collapsed{{0, 0, 2}, 2};
    Classification cc = classify_embedding(H, collapsed, spec);
    CHECK(cc.mono_red);
    CHECK(!cc.mono_blue);
    CHECK(cc.almost_red);
    CHECK(cc.almost_blue);

    CHECK_THROWS_AS(classify_embedding(H, Embedding{{0, 1}, 1}, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(classify_embedding(H, Embedding{{0, 0, 2}, 1}, spec),
                    std::invalid_argument);
}

TEST_CASE("search_embedding matches naive enumeration") {
    ColoringSpec spec = tiny_spec(3, 2);  // M_3 = 4
    std::vector<KGraph> cases = {
        make(3, 3, {{1, 2, 3}}),
        make(3, 4, {{1, 2, 3}, {2, 3, 4}}),
        make(3, 5, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}),
        make(3, 4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}),
    };
    for (const auto& H : cases)
        for (long b = 1; b <= 2; ++b)
            for (Color color : {Color::red, Color::blue}) {
                SearchOutcome out = search_embedding(H, spec, b, color);
                bool exists = naive_mono_exists(H, spec, b, color);
                CHECK(out.status != SearchStatus::budget_exceeded);
                CHECK((out.status == SearchStatus::found) == exists);
                if (out.status == SearchStatus::found) {
                    CHECK(is_embedding(out.embedding, spec.M(3)));
                    Classification cls = classify_embedding(H, out.embedding, spec);
                    CHECK((color == Color::red ? cls.mono_red : cls.mono_blue));
                }
            }
}

TEST_CASE("search_embedding budget handling") {
    ColoringSpec spec = tiny_spec(3, 2);
    KGraph H = make(3, 4, {{1, 2, 3}, {2, 3, 4}});
    SearchOutcome out = search_embedding(H, spec, 1, Color::red, 1);
    CHECK(out.status == SearchStatus::budget_exceeded);
    CHECK_THROWS_AS(search_embedding(H, spec, 0, Color::red), std::invalid_argument);
}

TEST_CASE("pigeonhole certificate") {
    // M_3 = 2 and b = 1: three vertices cannot map injectively into {0, 1},
    // so no embedding exists in either color
    ColoringSpec spec = tiny_spec(3, 1);
    REQUIRE(spec.M(3) == 2);
    KGraph H = make(3, 3, {{1, 2, 3}});
    CertifyOutcome out = certify_lower_bound(H, spec, 1);
    REQUIRE(out.certified);
    CHECK(out.certificate->bound == 2);
    CHECK(out.certificate->exhaustive);
    CHECK(verify_certificate(*out.certificate) == "");
}

TEST_CASE("certify reports monochromatic embeddings") {
    ColoringSpec spec = tiny_spec(3, 2);
    KGraph H = make(3, 3, {{1, 2, 3}});
    // with b = 2 a collapsed red image always exists
    CertifyOutcome out = certify_lower_bound(H, spec, 2);
    CHECK(!out.certified);
    REQUIRE(out.found.has_value());
    CHECK(out.found_color == Color::red);

    CertifyOutcome tight = certify_lower_bound(H, spec, 1, 1);
    CHECK(tight.inconclusive);
    CHECK(!tight.certificate.has_value());
}

TEST_CASE("certificate serialization and tampering") {
    ColoringSpec spec = tiny_spec(3, 1);
    KGraph H = make(3, 3, {{1, 2, 3}});
    Certificate cert = *certify_lower_bound(H, spec, 1).certificate;

    Certificate back = Certificate::parse(cert.serialize());
    CHECK(back.serialize() == cert.serialize());
    CHECK(back.bound == cert.bound);
    CHECK(back.hypergraph == cert.hypergraph);
    CHECK(verify_certificate(back) == "");

    Certificate wrong_bound = cert;
    wrong_bound.bound = 99;
    CHECK(verify_certificate(wrong_bound).find("bound") != std::string::npos);

    Certificate wrong_nodes = cert;
    wrong_nodes.nodes_red += 1;
    CHECK(verify_certificate(wrong_nodes).find("node counts") != std::string::npos);

    Certificate not_exhaustive = cert;
    not_exhaustive.exhaustive = false;
    CHECK(!verify_certificate(not_exhaustive).empty());

    // a certified graph with an edge added back may admit an embedding; a
    // certificate for the wrong graph must be rejected by the re-run
    auto path = std::filesystem::temp_directory_path() / "cert-test.txt";
    cert.save(path.string());
    CHECK(Certificate::load(path.string()).serialize() == cert.serialize());
    std::filesystem::remove(path);

    CHECK_THROWS(Certificate::parse("nonsense\n"));
}

TEST_CASE("descend_step") {
    DescentStep d = descend_step({0, 4, 5, 7}, 4);
    CHECK(d.delta_to_pivot == std::vector<Nat>{3, 2, 2});
    CHECK(d.delta_to_pivot == d.running_max);

    CHECK(descend_step({3, 9, 12}, 1).delta_to_pivot.empty());

    DescentStep mid = descend_step({1, 2, 4, 8}, 3);
    CHECK(mid.delta_to_pivot == std::vector<Nat>{3, 3});

    CHECK_THROWS_AS(descend_step({5, 3}, 2), std::invalid_argument);
    CHECK_THROWS_AS(descend_step({1, 2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(descend_step({1, 2}, 0), std::invalid_argument);

    // the two formulas coincide on random sorted tuples (asserted internally)
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        std::vector<Nat> xs;
        for (int i = 0; i < 5; ++i) xs.push_back(rng.next_below(512));
        std::sort(xs.begin(), xs.end());
        for (std::size_t p = 1; p <= xs.size(); ++p) CHECK_NOTHROW(descend_step(xs, p));
    }
}

TEST_CASE("correlated") {
    // B puts 4 of s=4 elements in [1,2] of n=8: expect 1, count 4
    CHECK(correlated({1, 2, 1, 2}, 1, 2, 8, 4, 0.5));
    // perfectly proportional: count 1 = expect 1
    CHECK(!correlated({1, 3, 5, 7}, 1, 2, 8, 4, 0.25));
    CHECK_THROWS_AS(correlated({1}, 1, 2, 8, 1, 0.0), std::invalid_argument);
}

TEST_CASE("interval_partition") {
    IntervalPartition p = interval_partition(1024);
    CHECK(p.intervals[0] == std::pair<int, int>{1, 342});
    CHECK(p.intervals[1] == std::pair<int, int>{343, 683});
    CHECK(p.intervals[2] == std::pair<int, int>{684, 1024});

    IntervalPartition q = interval_partition(7);
    CHECK(q.intervals[0] == std::pair<int, int>{1, 3});
    CHECK(q.intervals[1] == std::pair<int, int>{4, 5});
    CHECK(q.intervals[2] == std::pair<int, int>{6, 7});

    // consecutive cover of [1, n] for a sweep of n
    for (int n = 3; n <= 50; ++n) {
        IntervalPartition r = interval_partition(n);
        CHECK(r.intervals[0].first == 1);
        CHECK(r.intervals[2].second == n);
        CHECK(r.intervals[0].second + 1 == r.intervals[1].first);
        CHECK(r.intervals[1].second + 1 == r.intervals[2].first);
    }
    CHECK_THROWS_AS(interval_partition(10, "halves"), std::invalid_argument);
    CHECK_THROWS_AS(interval_partition(2), std::invalid_argument);
}

TEST_CASE("complete_edge_order") {
    auto order = complete_edge_order(4, 3);
    std::vector<std::vector<int>> expect{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
    CHECK(order == expect);
}

TEST_CASE("brute_ramsey_check") {
    // a single edge is monochromatic under every coloring
    KGraph edge = make(3, 3, {{1, 2, 3}});
    CHECK(brute_ramsey_check(edge, 3).holds);

    // K_4^(3) at N=4: the copy is the whole edge set; any mixed coloring avoids it
    KGraph k4 = make(3, 4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    BruteOutcome out = brute_ramsey_check(k4, 4);
    CHECK(!out.holds);
    CHECK(out.coloring_bits.size() == 4);
    CHECK(out.coloring_bits.find('0') != std::string::npos);
    CHECK(out.coloring_bits.find('1') != std::string::npos);
    CHECK(!contains_mono_copy(k4, 4, 3, out.coloring_bits));

    // counterexamples come in integer order of the red bitmask
    CHECK(out.coloring_bits == "1000");

    CHECK_THROWS_WITH_AS(brute_ramsey_check(edge, 9),
                         doctest::Contains("budget"), std::runtime_error);
    CHECK_THROWS_AS(contains_mono_copy(k4, 4, 3, "10"), std::invalid_argument);
}

TEST_CASE("contains_mono_copy finds planted copies") {
    KGraph k4 = make(3, 4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    auto order = complete_edge_order(5, 3);
    // all red: certainly contains a red K_4^(3)
    CHECK(contains_mono_copy(k4, 5, 3, std::string(order.size(), '1')));
    CHECK(contains_mono_copy(k4, 5, 3, std::string(order.size(), '0')));
}
