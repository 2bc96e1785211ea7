#include <doctest.h>

#include "ramsey/bitdelta.hpp"
#include "ramsey/rng.hpp"

#include <vector>

using namespace ramsey;

namespace {

// independent bit-scan oracle: compare digits from the top position down
Nat delta_oracle(const Nat& x, const Nat& y) {
    unsigned long top = 0;
    if (x > 0) top = boost::multiprecision::msb(x) + 1;
    if (y > 0) top = std::max<unsigned long>(top, boost::multiprecision::msb(y) + 1);
    for (unsigned long i = top; i >= 1; --i) {
        int bx = boost::multiprecision::bit_test(x, i - 1) ? 1 : 0;
        int by = boost::multiprecision::bit_test(y, i - 1) ? 1 : 0;
        if (bx != by) return Nat(i);
    }
    return 0;
}

Nat random_128bit(Rng& rng) {
    Nat x = rng.next_u64();
    x <<= 64;
    x += rng.next_u64();
    return x;
}

}  // namespace

TEST_CASE("bit extraction") {
    CHECK(bit(5, 1) == 1);
    CHECK(bit(5, 2) == 0);
    CHECK(bit(5, 3) == 1);
    CHECK(bit(8, 4) == 1);
    for (unsigned long i = 1; i <= 200; ++i) CHECK(bit(0, i) == 0);
    CHECK_THROWS_AS(bit(5, 0), std::invalid_argument);
}

TEST_CASE("delta basics") {
    CHECK(delta(7, 7) == 0);
    CHECK(delta(0, 0) == 0);
    CHECK(delta(5, 3) == 3);
    CHECK(delta(1, 2) == 2);
    CHECK(delta(3, 5) == 3);  // symmetric
    Nat big = Nat(1) << 1000;
    CHECK(delta(big, 0) == 1001);
}

TEST_CASE("delta matches the bit-scan oracle exhaustively below 256") {
    for (long x = 0; x < 256; ++x)
        for (long y = 0; y < 256; ++y)
            CHECK(delta(x, y) == delta_oracle(x, y));
}

TEST_CASE("delta matches the oracle on random 128-bit values") {
    Rng rng(20240901);
    for (int i = 0; i < 2000; ++i) {
        Nat x = random_128bit(rng), y = random_128bit(rng);
        CHECK(delta(x, y) == delta_oracle(x, y));
    }
}

TEST_CASE("delta_vector") {
    DeltaVector dv = delta_vector({1, 2, 4, 8});
    CHECK(dv.entries == std::vector<Nat>{2, 3, 4});
    CHECK(delta_vector({0, 0, 0}).entries == std::vector<Nat>{0, 0});
    CHECK(delta_vector({0, 4, 5, 7}).entries == std::vector<Nat>{3, 1, 2});
    CHECK_THROWS_AS(delta_vector({2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(delta_vector({5}), std::invalid_argument);
}

TEST_CASE("argmax_unique") {
    CHECK(argmax_unique(delta_vector({0, 4, 5, 7})) == 1);
    CHECK(argmax_unique(delta_vector({0, 1, 4, 5})) == 2);  // entries (1,3,1)
    CHECK(argmax_unique(delta_vector({1, 2, 4, 8})) == 3);  // strictly increasing
    CHECK(!argmax_unique(delta_vector({3, 3, 3})).has_value());
}

TEST_CASE("Property A: order agrees with the differing bit") {
    for (long x = 0; x < 128; ++x)
        for (long y = 0; y < 128; ++y) {
            if (x == y) continue;
            Nat d = delta(x, y);
            CHECK((x < y) == (bit(x, d.convert_to<unsigned long>()) <
                              bit(y, d.convert_to<unsigned long>())));
        }
}

TEST_CASE("Property B: adjacent deltas differ around a strict increase") {
    for (long x = 0; x < 64; ++x)
        for (long y = x; y < 64; ++y)
            for (long z = y; z < 64; ++z) {
                if (x == z) continue;
                CHECK(delta(x, y) != delta(y, z));
            }
}

TEST_CASE("Property C: end-to-end delta is the unique max entry") {
    for (long a = 0; a < 24; ++a)
        for (long b = a; b < 24; ++b)
            for (long c = b; c < 24; ++c)
                for (long d = c; d < 24; ++d) {
                    DeltaVector dv = delta_vector({a, b, c, d});
                    Nat mx = 0;
                    int max_count = 0;
                    for (const auto& e : dv.entries)
                        if (e > mx) mx = e;
                    for (const auto& e : dv.entries)
                        if (e == mx) ++max_count;
                    CHECK(delta(Nat(a), Nat(d)) == mx);
                    if (a < d) {
                        CHECK(max_count == 1);
                        auto idx = argmax_unique(dv);
                        REQUIRE(idx.has_value());
                        CHECK(dv.entries[*idx - 1] == mx);
                    }
                }
}

TEST_CASE("running-max identity on random sorted tuples") {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Nat> xs;
        for (int i = 0; i < 6; ++i) xs.push_back(rng.next_below(1024));
        std::sort(xs.begin(), xs.end());
        DeltaVector dv = delta_vector(xs);
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                Nat mx = 0;
                for (std::size_t z = i; z < j; ++z)
                    if (dv.entries[z] > mx) mx = dv.entries[z];
                CHECK(delta(xs[i], xs[j]) == mx);
            }
    }
}
