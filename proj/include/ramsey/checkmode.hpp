#pragma once

#include <cstdint>
#include <string>

namespace ramsey {

// Verification mode shared by all checkers. Exhaustive mode proves the
// property (within an enumeration budget); Monte Carlo mode only reports
// "no violation found" among the sampled candidates.
struct CheckMode {
    enum class Kind { exhaustive, montecarlo };
    Kind kind = Kind::exhaustive;
    long samples = 0;
    std::uint64_t seed = 0;

    static CheckMode Exhaustive() { return {Kind::exhaustive, 0, 0}; }
    static CheckMode MonteCarlo(long samples, std::uint64_t seed) {
        return {Kind::montecarlo, samples, seed};
    }
    bool exhaustive() const { return kind == Kind::exhaustive; }
    std::string describe() const {
        if (exhaustive()) return "exhaustive";
        return "montecarlo samples=" + std::to_string(samples) +
               " seed=" + std::to_string(seed);
    }
};

enum class CheckStatus { pass, fail, refused };

}  // namespace ramsey
