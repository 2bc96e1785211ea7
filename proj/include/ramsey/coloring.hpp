#pragma once

#include "ramsey/bitdelta.hpp"
#include "ramsey/checkmode.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ramsey {

enum class Color { red, blue };

inline const char* to_string(Color c) { return c == Color::red ? "red" : "blue"; }
inline char color_letter(Color c) { return c == Color::red ? 'R' : 'B'; }
inline Color other(Color c) { return c == Color::red ? Color::blue : Color::red; }

// Every named constant of the construction, with paper defaults and desk
// overrides. The active mode ("paper" or "desk") is recorded.
struct ConstructionConstants {
    int k = 3;
    long m = 4;
    double c3 = 1.0;          // base exponent coefficient; paper 1e-5
    double theta = 0.55;      // partition-density threshold
    double sub_density = 0.51;
    long clique_bound = 0;    // paper: 2e-3 * m + 1
    double epsilon = 1e-3;    // paper: 10^{-6k}
    double goodness_C = 6.0;  // paper: 2k (2/eps)^k
    double s_blocks = 0.0;    // block size of the spread hypergraph; paper: 10^{20k} m
    std::string mode = "desk";

    static ConstructionConstants paper(int k, long m);
    // Desk defaults keep every derived quantity laptop sized.
    static ConstructionConstants desk(int k, long m, double c3 = 1.0);

    void validate() const;

    // exponent of M_3(m) = 2^ceil(c3 * m)
    long base_exponent() const;

    double alpha_level(int ell) const;          // (1e5)^{-k+ell}
    double b_level(int ell, long n) const;      // (1e5)^{-k-ell+6} * n / m

    std::string describe() const;
};

// M_k(m): M_3 = 2^ceil(c3*m), M_j = 2^(M_{j-1} - 1) for j >= 4.
// Refuses to materialize beyond bit_budget bits.
struct TowerSize {
    bool materializable = false;
    Nat value;
    std::string note;  // set when not materializable
};
TowerSize tower_size(int k, const ConstructionConstants& cc,
                     long bit_budget = (1L << 20));
TowerSize tower_size_from_exponent(int k, long base_exponent,
                                   long bit_budget = (1L << 20));

// Seed-deterministic uniform red/blue coloring of the 3-subsets of [0, s).
// Every edge color derives from (seed, sorted triple) alone; a bitmap cache
// is kept for s <= 1024, with identical results either way.
class BaseColoring {
public:
    BaseColoring() = default;
    static BaseColoring sample(long s, std::uint64_t seed);

    long s() const { return s_; }
    std::uint64_t seed() const { return seed_; }
    Color color(long x, long y, long z) const;  // distinct values in [0, s)
    long long count(Color c) const;             // over all C(s,3) triples

    const std::string& verification() const { return verification_; }
    void set_verification(std::string v) { verification_ = std::move(v); }

    // one line per 3-subset: "i j k R|B", sorted ascending (s <= 64)
    std::string dump() const;

private:
    long s_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::uint8_t> bitmap_;  // one bit per triple, colex order
    std::string verification_;
};

struct VerifyResult {
    CheckStatus status = CheckStatus::refused;
    std::string witness;  // violating clique or subset, when status == fail
    std::string record;
};

// Lemma-3-style property check, for BOTH colors:
//  (a) no monochromatic clique on more than clique_bound vertices,
//  (b) for subsets T with |T| >= min_subset_size, each color's edge count
//      inside T stays below sub_density * C(|T|,3).
// Exhaustive mode enumerates (tiny s only, budget guarded); Monte Carlo
// mode samples cliques/subsets and records the sample count.
VerifyResult verify_base_properties(const BaseColoring& bc, long clique_bound,
                                    double sub_density, long min_subset_size,
                                    const CheckMode& mode,
                                    long long enum_budget = 20'000'000);

// W = sum over c-colored triples of w(i) w(j) w(k), exact.
Rational weight_sum_W(const BaseColoring& bc, const std::vector<Rational>& w,
                      Color c);

// Sample-then-verify loop for the base coloring: regenerates with a fresh
// derived seed on verification failure, up to max_retries attempts.
struct SampledBase {
    BaseColoring coloring;
    bool verified = false;
    int attempts = 0;
    std::string record;
};
SampledBase sample_verified_base(long s, std::uint64_t master_seed,
                                 long clique_bound, double sub_density,
                                 long min_subset_size, const CheckMode& mode,
                                 int max_retries);

// The full stepping-up coloring phi^(k)_m plus the product coloring Psi.
struct ColoringSpec {
    int k = 3;
    ConstructionConstants constants;
    long bit_budget = (1L << 20);
    std::uint64_t seed = 0;
    BaseColoring base;        // on s = M_3 values
    std::vector<Nat> msizes;  // msizes[j-3] = M_j(m) for j = 3..k

    const Nat& M(int j) const;

    Color phi3(std::vector<Nat> xs) const;           // 3-multiset
    Color phik(int kk, std::vector<Nat> xs) const;   // k-multiset, kk >= 3
    Color phi(std::vector<Nat> xs) const { return phik(k, std::move(xs)); }
    // k distinct pairs (x, y) with y in [1, b]; colored by phi^(k) on the x's
    Color psi(const std::vector<std::pair<Nat, long>>& pairs, long b) const;

    static ColoringSpec make(int k, const ConstructionConstants& cc,
                             std::uint64_t seed, long clique_bound,
                             double sub_density, long min_subset_size,
                             const CheckMode& mode, int max_retries,
                             long bit_budget = (1L << 20));

    std::string serialize() const;
    static ColoringSpec parse(const std::string& text);
    void save(const std::string& path) const;
    static ColoringSpec load(const std::string& path);
};

// true if the sequence is non-decreasing or non-increasing
bool is_monotone(const std::vector<Nat>& seq);

}  // namespace ramsey
