#include "ramsey/bitdelta.hpp"

namespace ramsey {

int bit(const Nat& x, unsigned long i) {
    if (i == 0) throw std::invalid_argument("bit: position must be >= 1");
    return boost::multiprecision::bit_test(x, i - 1) ? 1 : 0;
}

Nat delta(const Nat& x, const Nat& y) {
    if (x == y) return 0;
    Nat z = x ^ y;
    return Nat(boost::multiprecision::msb(z)) + 1;
}

DeltaVector delta_vector(const std::vector<Nat>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("delta_vector: need t >= 2");
    DeltaVector dv;
    dv.source = xs;
    dv.entries.reserve(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (xs[i] > xs[i + 1])
            throw std::invalid_argument("delta_vector: input not sorted");
        dv.entries.push_back(delta(xs[i], xs[i + 1]));
    }
    return dv;
}

std::optional<std::size_t> argmax_unique(const DeltaVector& dv) {
    if (dv.source.front() == dv.source.back()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t i = 1; i < dv.entries.size(); ++i)
        if (dv.entries[i] > dv.entries[best]) best = i;
    return best + 1;  // 1-based
}

}  // namespace ramsey
