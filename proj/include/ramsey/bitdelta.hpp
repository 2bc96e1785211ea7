#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ramsey {

// Arbitrary-precision non-negative integer. Tower sizes exceed machine
// words even for modest parameters, so everything bit-level runs on these.
using Nat = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// bit(x, i) = a_{i-1} where x = sum a_i 2^i; positions are 1-indexed.
int bit(const Nat& x, unsigned long i);

// Highest 1-indexed position where x and y differ; 0 when x == y.
Nat delta(const Nat& x, const Nat& y);

struct DeltaVector {
    std::vector<Nat> entries;  // entries[i] = delta(source[i], source[i+1])
    std::vector<Nat> source;   // the sorted multiset it was computed from
};

// Requires xs non-decreasing with at least 2 elements (caller sorts).
DeltaVector delta_vector(const std::vector<Nat>& xs);

// Unique 1-based index attaining max entry. Guaranteed unique when the
// source multiset has source.front() < source.back(); returns nullopt on
// the degenerate all-equal multiset (no strict maximum exists).
std::optional<std::size_t> argmax_unique(const DeltaVector& dv);

}  // namespace ramsey
