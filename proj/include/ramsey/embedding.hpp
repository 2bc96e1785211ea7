#pragma once

#include "ramsey/bitdelta.hpp"
#include "ramsey/coloring.hpp"
#include "ramsey/hypergraph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ramsey {

// Multiplicity-bounded map of V(H) into [0, M): target[v-1] = h(v).
struct Embedding {
    std::vector<Nat> target;
    long bound = 1;
};

// range and multiplicity constraints only (no color condition)
bool is_embedding(const Embedding& h, const Nat& M);

struct Classification {
    bool mono_red = false, mono_blue = false;
    bool almost_red = false, almost_blue = false;
};

// Evaluates every edge's image multiset under phi^(k). Full monochromatic:
// every edge image gets color c (collapsed images included). Almost: edges
// whose images collapse are exempt, so an embedding can be almost
// monochromatic for both colors at once.
Classification classify_embedding(const KGraph& H, const Embedding& h,
                                  const ColoringSpec& spec);

enum class SearchStatus { found, exhausted_none, budget_exceeded };

struct SearchOutcome {
    SearchStatus status = SearchStatus::exhausted_none;
    Embedding embedding;      // valid when status == found
    std::uint64_t nodes = 0;  // backtracking nodes explored
};

// Backtracking over assignments of [0, M) values (M = M_k of the spec) with
// multiplicity pruning and earliest-complete-edge color pruning. A budget
// of 0 means unlimited. exhausted_none is a proof of nonexistence for the
// given color.
SearchOutcome search_embedding(const KGraph& H, const ColoringSpec& spec, long b,
                               Color color, std::uint64_t budget = 0);

struct Certificate {
    KGraph hypergraph;
    std::string spec_text;  // full serialized ColoringSpec
    long b = 1;
    Nat bound;  // M_k(m) * b
    std::uint64_t nodes_red = 0, nodes_blue = 0;
    bool exhaustive = true;

    std::string serialize() const;
    static Certificate parse(const std::string& text);
    void save(const std::string& path) const;
    static Certificate load(const std::string& path);
};

struct CertifyOutcome {
    bool certified = false;
    std::optional<Certificate> certificate;
    std::optional<Embedding> found;  // a monochromatic embedding, when one exists
    std::optional<Color> found_color;
    bool inconclusive = false;
    std::uint64_t nodes = 0;
};

// Emits a certificate iff the search exhausts with no monochromatic
// embedding in EITHER color; a budget overrun is inconclusive, never a
// certificate.
CertifyOutcome certify_lower_bound(const KGraph& H, const ColoringSpec& spec,
                                   long b, std::uint64_t budget = 0);

// Re-derives everything from the certificate file alone and re-runs the
// search. Returns an error message, or empty string when the certificate
// is confirmed.
std::string verify_certificate(const Certificate& cert, std::uint64_t budget = 0);

// Claim-1 descent: for sorted x_1 <= ... <= x_n and a pivot index j*
// (1-based), the level-down image of i < j* is delta(x_i, x_{j*}), which
// must coincide with the running max of the delta vector over [i, j*).
struct DescentStep {
    std::vector<Nat> delta_to_pivot;  // index i-1 holds the value for i
    std::vector<Nat> running_max;
};
DescentStep descend_step(const std::vector<Nat>& sorted_values, std::size_t pivot);

// correlated-block test: | |B ∩ I| - (|I|/n) s | >= eps*s
bool correlated(const std::vector<int>& B, int interval_lo, int interval_hi,
                int n, int s, double eps);

// three consecutive index intervals covering [1, n], each of size
// >= n/1024; the only built-in strategy is "equal-thirds"
struct IntervalPartition {
    std::array<std::pair<int, int>, 3> intervals;  // inclusive [lo, hi]
    std::string strategy;
};
IntervalPartition interval_partition(int n, const std::string& strategy = "equal-thirds");

// Tiny-scale brute-force Ramsey oracle: enumerates every red/blue coloring
// of K_N^(k) in lexicographic edge order (bit 1 = red). holds = every
// coloring contains a monochromatic copy of H (so r(H) <= N); otherwise
// the first H-avoiding coloring is returned (so r(H) > N).
struct BruteOutcome {
    bool holds = false;
    std::string coloring_bits;  // set when !holds
};
BruteOutcome brute_ramsey_check(const KGraph& H, int N,
                                std::uint64_t budget = (1ULL << 26));

// does this explicit coloring of K_N^(k) contain a monochromatic copy of H?
bool contains_mono_copy(const KGraph& H, int N, int k,
                        const std::string& coloring_bits);

// lexicographically ordered edges of K_N^(k)
std::vector<std::vector<int>> complete_edge_order(int N, int k);

}  // namespace ramsey
