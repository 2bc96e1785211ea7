#include "ramsey/coloring.hpp"

#include "ramsey/hypergraph.hpp"
#include "ramsey/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ramsey {

namespace {

std::string fmt_double(double d) {
    std::ostringstream out;
    out << std::setprecision(17) << d;
    return out.str();
}

std::uint64_t triple_bit(std::uint64_t seed, long x, long y, long z) {
    return mix64(mix64(mix64(seed, static_cast<std::uint64_t>(x)),
                       static_cast<std::uint64_t>(y)),
                 static_cast<std::uint64_t>(z)) &
           1ULL;
}

// colex rank of the 0-based triple x < y < z
long long triple_rank(long x, long y, long z) {
    return binomial(z, 3) + binomial(y, 2) + x;
}

}  // namespace

ConstructionConstants ConstructionConstants::paper(int k, long m) {
    ConstructionConstants cc;
    cc.k = k;
    cc.m = m;
    cc.c3 = 1e-5;
    cc.theta = 0.55;
    cc.sub_density = 0.51;
    cc.clique_bound = static_cast<long>(2e-3 * static_cast<double>(m)) + 1;
    cc.epsilon = std::pow(10.0, -6.0 * k);
    cc.goodness_C = 2.0 * k * std::pow(2.0 / cc.epsilon, k);
    cc.s_blocks = std::pow(10.0, 20.0 * k) * static_cast<double>(m);
    cc.mode = "paper";
    return cc;
}

ConstructionConstants ConstructionConstants::desk(int k, long m, double c3) {
    ConstructionConstants cc;
    cc.k = k;
    cc.m = m;
    cc.c3 = c3;
    cc.theta = 0.55;
    cc.sub_density = 0.51;
    cc.clique_bound = 8;
    cc.epsilon = 0.25;
    // large enough that the sampled H_R stays above the membership threshold
    cc.goodness_C = 50.0;
    cc.s_blocks = 20.0;
    cc.mode = "desk";
    return cc;
}

void ConstructionConstants::validate() const {
    if (k < 3) throw std::invalid_argument("constants: k must be >= 3");
    if (m < 1) throw std::invalid_argument("constants: m must be >= 1");
    if (!(c3 > 0)) throw std::invalid_argument("constants: c3 must be positive");
    if (!(theta > 0 && theta < 1))
        throw std::invalid_argument("constants: theta must be in (0,1)");
    if (!(sub_density > 0 && sub_density < theta))
        throw std::invalid_argument("constants: need 0 < subDensity < theta");
    if (!(epsilon > 0 && epsilon <= 1))
        throw std::invalid_argument("constants: epsilon must be in (0,1]");
}

long ConstructionConstants::base_exponent() const {
    // absorb floating-point noise when c3*m lands on an integer (e.g. 1e-5 * 1e7)
    double e = std::ceil(c3 * static_cast<double>(m) - 1e-9);
    if (e < 1) e = 1;
    return static_cast<long>(e);
}

double ConstructionConstants::alpha_level(int ell) const {
    return std::pow(1e5, static_cast<double>(ell - k));
}

double ConstructionConstants::b_level(int ell, long n) const {
    return std::pow(1e5, static_cast<double>(6 - k - ell)) *
           static_cast<double>(n) / static_cast<double>(m);
}

std::string ConstructionConstants::describe() const {
    std::ostringstream out;
    out << "mode=" << mode << " k=" << k << " m=" << m << " c3=" << fmt_double(c3)
        << " theta=" << fmt_double(theta)
        << " subDensity=" << fmt_double(sub_density)
        << " cliqueBound=" << clique_bound << " epsilon=" << fmt_double(epsilon)
        << " C=" << fmt_double(goodness_C) << " s_blocks=" << fmt_double(s_blocks)
        << " M3_exponent=" << base_exponent();
    return out.str();
}

TowerSize tower_size_from_exponent(int k, long base_exponent, long bit_budget) {
    if (k < 3) throw std::invalid_argument("tower_size: k must be >= 3");
    if (base_exponent < 1)
        throw std::invalid_argument("tower_size: exponent must be >= 1");
    TowerSize ts;
    if (base_exponent + 1 > bit_budget) {
        ts.note = "M_3 needs " + std::to_string(base_exponent + 1) +
                  " bits, over the budget of " + std::to_string(bit_budget);
        return ts;
    }
    Nat cur = Nat(1) << base_exponent;  // M_3
    for (int j = 4; j <= k; ++j) {
        // M_j = 2^(M_{j-1} - 1): needs M_{j-1} bits
        if (cur > bit_budget) {
            ts.note = "M_" + std::to_string(j) + " needs M_" +
                      std::to_string(j - 1) + " = " + cur.str() +
                      " bits, over the budget of " + std::to_string(bit_budget);
            return ts;
        }
        unsigned long shift = cur.convert_to<unsigned long>() - 1;
        cur = Nat(1) << shift;
    }
    ts.materializable = true;
    ts.value = cur;
    return ts;
}

TowerSize tower_size(int k, const ConstructionConstants& cc, long bit_budget) {
    return tower_size_from_exponent(k, cc.base_exponent(), bit_budget);
}

BaseColoring BaseColoring::sample(long s, std::uint64_t seed) {
    // s = 2 arises from the smallest tower size M_3 = 2; it has no triples
    if (s < 2) throw std::invalid_argument("BaseColoring: s must be >= 2");
    BaseColoring bc;
    bc.s_ = s;
    bc.seed_ = seed;
    if (s <= 1024) {
        long long triples = binomial(s, 3);
        bc.bitmap_.assign(static_cast<std::size_t>((triples + 7) / 8), 0);
        for (long z = 2; z < s; ++z)
            for (long y = 1; y < z; ++y)
                for (long x = 0; x < y; ++x) {
                    if (triple_bit(seed, x, y, z)) {
                        long long r = triple_rank(x, y, z);
                        bc.bitmap_[static_cast<std::size_t>(r >> 3)] |=
                            static_cast<std::uint8_t>(1u << (r & 7));
                    }
                }
    }
    return bc;
}

Color BaseColoring::color(long x, long y, long z) const {
    if (x > y) std::swap(x, y);
    if (y > z) std::swap(y, z);
    if (x > y) std::swap(x, y);
    if (x < 0 || z >= s_) throw std::out_of_range("BaseColoring: value out of range");
    if (x == y || y == z)
        throw std::invalid_argument("BaseColoring: triple not distinct");
    bool red;
    if (!bitmap_.empty()) {
        long long r = triple_rank(x, y, z);
        red = (bitmap_[static_cast<std::size_t>(r >> 3)] >> (r & 7)) & 1;
    } else {
        red = triple_bit(seed_, x, y, z) != 0;
    }
    return red ? Color::red : Color::blue;
}

long long BaseColoring::count(Color c) const {
    long long reds = 0;
    for (long z = 2; z < s_; ++z)
        for (long y = 1; y < z; ++y)
            for (long x = 0; x < y; ++x)
                if (color(x, y, z) == Color::red) ++reds;
    return c == Color::red ? reds : binomial(s_, 3) - reds;
}

std::string BaseColoring::dump() const {
    if (s_ > 64) throw std::invalid_argument("dump: only supported for s <= 64");
    std::ostringstream out;
    for (long x = 0; x < s_; ++x)
        for (long y = x + 1; y < s_; ++y)
            for (long z = y + 1; z < s_; ++z)
                out << x << ' ' << y << ' ' << z << ' '
                    << color_letter(color(x, y, z)) << "\n";
    return out.str();
}

namespace {

// is every triple inside `vs` colored c?
bool is_mono_clique(const BaseColoring& bc, const std::vector<long>& vs, Color c) {
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            for (std::size_t d = b + 1; d < vs.size(); ++d)
                if (bc.color(vs[a], vs[b], vs[d]) != c) return false;
    return true;
}

long long count_in_subset(const BaseColoring& bc, const std::vector<long>& vs,
                          Color c) {
    long long cnt = 0;
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            for (std::size_t d = b + 1; d < vs.size(); ++d)
                if (bc.color(vs[a], vs[b], vs[d]) == c) ++cnt;
    return cnt;
}

std::string join(const std::vector<long>& vs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out << ' ';
        out << vs[i];
    }
    return out.str();
}

// visit all t-subsets of [0, s)
bool for_each_subset(long s, long t,
                     const std::function<bool(const std::vector<long>&)>& cb) {
    std::vector<long> idx(static_cast<std::size_t>(t));
    std::function<bool(long, long)> rec = [&](long pos, long start) -> bool {
        if (pos == t) return cb(idx);
        for (long v = start; v <= s - (t - pos); ++v) {
            idx[static_cast<std::size_t>(pos)] = v;
            if (!rec(pos + 1, v + 1)) return false;
        }
        return true;
    };
    return rec(0, 0);
}

std::vector<long> random_subset(Rng& rng, long s, long t) {
    std::vector<long> pool(static_cast<std::size_t>(s));
    for (long i = 0; i < s; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (long i = 0; i < t; ++i) {
        long j = i + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(s - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<long> out(pool.begin(), pool.begin() + t);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

VerifyResult verify_base_properties(const BaseColoring& bc, long clique_bound,
                                    double sub_density, long min_subset_size,
                                    const CheckMode& mode, long long enum_budget) {
    VerifyResult res;
    std::ostringstream rec;
    const long s = bc.s();
    const long q = clique_bound + 1;  // clique size that would violate (a)
    rec << "op verify_base_properties s=" << s << " cliqueBound=" << clique_bound
        << " subDensity=" << fmt_double(sub_density)
        << " minSubsetSize=" << min_subset_size << " mode=" << mode.describe()
        << "\n";

    auto fail = [&](const std::string& what, const std::string& witness) {
        res.status = CheckStatus::fail;
        res.witness = what + ": " + witness;
        rec << "result fail " << res.witness << "\n";
        res.record = rec.str();
        return res;
    };

    if (mode.exhaustive()) {
        if (q <= s) {
            if (binomial(s, q) > enum_budget) {
                res.status = CheckStatus::refused;
                rec << "result refused clique enumeration C(" << s << "," << q
                    << ") over budget " << enum_budget << "\n";
                res.record = rec.str();
                return res;
            }
            std::string found;
            for_each_subset(s, q, [&](const std::vector<long>& vs) {
                if (is_mono_clique(bc, vs, Color::red) ||
                    is_mono_clique(bc, vs, Color::blue)) {
                    found = join(vs);
                    return false;
                }
                return true;
            });
            if (!found.empty()) return fail("monochromatic clique", found);
        }
        // total number of subsets to test
        long long total = 0;
        for (long t = std::max<long>(min_subset_size, 3); t <= s; ++t) {
            total += binomial(s, t);
            if (total > enum_budget) break;
        }
        if (total > enum_budget) {
            res.status = CheckStatus::refused;
            rec << "result refused subset enumeration over budget " << enum_budget
                << "\n";
            res.record = rec.str();
            return res;
        }
        for (long t = std::max<long>(min_subset_size, 3); t <= s; ++t) {
            std::string found;
            long long cap = static_cast<long long>(sub_density *
                                                   static_cast<double>(binomial(t, 3)));
            for_each_subset(s, t, [&](const std::vector<long>& vs) {
                long long reds = count_in_subset(bc, vs, Color::red);
                long long blues = binomial(t, 3) - reds;
                if (static_cast<double>(reds) >=
                        sub_density * static_cast<double>(binomial(t, 3)) ||
                    static_cast<double>(blues) >=
                        sub_density * static_cast<double>(binomial(t, 3))) {
                    found = join(vs) + " red=" + std::to_string(reds) +
                            " blue=" + std::to_string(blues) +
                            " cap=" + std::to_string(cap);
                    return false;
                }
                return true;
            });
            if (!found.empty()) return fail("dense subset", found);
        }
        rec << "result pass (exhaustive)\n";
        res.status = CheckStatus::pass;
        res.record = rec.str();
        return res;
    }

    // Monte Carlo: sample clique candidates and density subsets
    Rng rng(mode.seed);
    if (q <= s) {
        for (long i = 0; i < mode.samples; ++i) {
            auto vs = random_subset(rng, s, q);
            if (is_mono_clique(bc, vs, Color::red) ||
                is_mono_clique(bc, vs, Color::blue))
                return fail("monochromatic clique", join(vs));
        }
        rec << "clique samples=" << mode.samples << " none monochromatic\n";
    }
    long min_t = std::max<long>(min_subset_size, 3);
    if (min_t <= s) {
        for (long i = 0; i < mode.samples; ++i) {
            long t = min_t + static_cast<long>(
                                 rng.next_below(static_cast<std::uint64_t>(s - min_t + 1)));
            auto vs = random_subset(rng, s, t);
            long long reds = count_in_subset(bc, vs, Color::red);
            long long blues = binomial(t, 3) - reds;
            double cap = sub_density * static_cast<double>(binomial(t, 3));
            if (static_cast<double>(reds) >= cap ||
                static_cast<double>(blues) >= cap)
                return fail("dense subset", join(vs) + " red=" + std::to_string(reds) +
                                                " blue=" + std::to_string(blues));
        }
        rec << "density samples=" << mode.samples << " none over threshold\n";
    }
    rec << "result pass (no violation found among sampled subsets)\n";
    res.status = CheckStatus::pass;
    res.record = rec.str();
    return res;
}

Rational weight_sum_W(const BaseColoring& bc, const std::vector<Rational>& w,
                      Color c) {
    if (static_cast<long>(w.size()) != bc.s())
        throw std::invalid_argument("weight_sum_W: weight vector size != s");
    for (const auto& wi : w)
        if (wi < 0 || wi > 1)
            throw std::invalid_argument("weight_sum_W: weight outside [0,1]");
    Rational total = 0;
    const long s = bc.s();
    for (long x = 0; x < s; ++x) {
        if (w[static_cast<std::size_t>(x)] == 0) continue;
        for (long y = x + 1; y < s; ++y) {
            if (w[static_cast<std::size_t>(y)] == 0) continue;
            Rational wxy = w[static_cast<std::size_t>(x)] * w[static_cast<std::size_t>(y)];
            for (long z = y + 1; z < s; ++z) {
                if (w[static_cast<std::size_t>(z)] == 0) continue;
                if (bc.color(x, y, z) == c)
                    total += wxy * w[static_cast<std::size_t>(z)];
            }
        }
    }
    return total;
}

SampledBase sample_verified_base(long s, std::uint64_t master_seed,
                                 long clique_bound, double sub_density,
                                 long min_subset_size, const CheckMode& mode,
                                 int max_retries) {
    SampledBase out;
    std::ostringstream rec;
    for (int attempt = 1; attempt <= max_retries; ++attempt) {
        std::uint64_t seed = derive_seed(master_seed, "base-coloring",
                                         static_cast<std::uint64_t>(attempt));
        BaseColoring bc = BaseColoring::sample(s, seed);
        CheckMode m = mode;
        if (!m.exhaustive())
            m.seed = derive_seed(master_seed, "base-verify",
                                 static_cast<std::uint64_t>(attempt));
        VerifyResult vr = verify_base_properties(bc, clique_bound, sub_density,
                                                 min_subset_size, m);
        rec << "attempt " << attempt << " seed " << seed << "\n" << vr.record;
        if (vr.status == CheckStatus::refused)
            throw std::runtime_error("base verification refused: " + vr.record);
        out.attempts = attempt;
        if (vr.status == CheckStatus::pass) {
            bc.set_verification(vr.record);
            out.coloring = std::move(bc);
            out.verified = true;
            out.record = rec.str();
            return out;
        }
    }
    out.verified = false;
    out.record = rec.str();
    return out;
}

const Nat& ColoringSpec::M(int j) const {
    if (j < 3 || j > k || static_cast<std::size_t>(j - 3) >= msizes.size())
        throw std::out_of_range("ColoringSpec::M: level out of range");
    return msizes[static_cast<std::size_t>(j - 3)];
}

Color ColoringSpec::phi3(std::vector<Nat> xs) const {
    if (xs.size() != 3) throw std::invalid_argument("phi3: need 3 values");
    std::sort(xs.begin(), xs.end());
    for (const auto& x : xs)
        if (x < 0 || x >= M(3)) throw std::out_of_range("phi3: value out of [0, M_3)");
    if (xs[0] == xs[1] || xs[1] == xs[2]) return Color::red;
    return base.color(xs[0].convert_to<long>(), xs[1].convert_to<long>(),
                      xs[2].convert_to<long>());
}

bool is_monotone(const std::vector<Nat>& seq) {
    bool nondec = true, noninc = true;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i] > seq[i + 1]) nondec = false;
        if (seq[i] < seq[i + 1]) noninc = false;
    }
    return nondec || noninc;
}

Color ColoringSpec::phik(int kk, std::vector<Nat> xs) const {
    if (kk < 3) throw std::invalid_argument("phik: k must be >= 3");
    if (static_cast<int>(xs.size()) != kk)
        throw std::invalid_argument("phik: multiset size != k");
    if (kk == 3) return phi3(std::move(xs));
    std::sort(xs.begin(), xs.end());
    for (const auto& x : xs)
        if (x < 0 || x >= M(kk)) throw std::out_of_range("phik: value out of [0, M_k)");
    DeltaVector dv = delta_vector(xs);
    if (is_monotone(dv.entries)) return phik(kk - 1, dv.entries);
    auto j = argmax_unique(dv);  // non-monotone implies not all equal
    if (*j == 1 || *j == static_cast<std::size_t>(kk - 1)) return Color::red;
    return Color::blue;
}

Color ColoringSpec::psi(const std::vector<std::pair<Nat, long>>& pairs,
                        long b) const {
    if (static_cast<int>(pairs.size()) != k)
        throw std::invalid_argument("psi: need a k-set of pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].second < 1 || pairs[i].second > b)
            throw std::invalid_argument("psi: multiplicity coordinate out of [1, b]");
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            if (pairs[i] == pairs[j])
                throw std::invalid_argument("psi: pairs not distinct");
    }
    std::vector<Nat> xs;
    xs.reserve(pairs.size());
    for (const auto& [x, y] : pairs) xs.push_back(x);
    return phik(k, std::move(xs));
}

ColoringSpec ColoringSpec::make(int k, const ConstructionConstants& cc,
                                std::uint64_t seed, long clique_bound,
                                double sub_density, long min_subset_size,
                                const CheckMode& mode, int max_retries,
                                long bit_budget) {
    cc.validate();
    if (k < 3) throw std::invalid_argument("ColoringSpec: k must be >= 3");
    ColoringSpec spec;
    spec.k = k;
    spec.constants = cc;
    spec.constants.k = k;
    spec.bit_budget = bit_budget;
    spec.seed = seed;
    for (int j = 3; j <= k; ++j) {
        TowerSize ts = tower_size_from_exponent(j, cc.base_exponent(), bit_budget);
        if (!ts.materializable)
            throw std::runtime_error("ColoringSpec: " + ts.note);
        spec.msizes.push_back(ts.value);
    }
    Nat m3 = spec.msizes.front();
    if (m3 > 1'000'000'000)
        throw std::runtime_error("ColoringSpec: M_3 too large for a base coloring");
    long s = m3.convert_to<long>();
    SampledBase sb = sample_verified_base(s, seed, clique_bound, sub_density,
                                          min_subset_size, mode, max_retries);
    if (!sb.verified)
        throw std::runtime_error("ColoringSpec: base verification failed after " +
                                 std::to_string(sb.attempts) + " attempts\n" +
                                 sb.record);
    spec.base = std::move(sb.coloring);
    return spec;
}

std::string ColoringSpec::serialize() const {
    std::ostringstream out;
    out << "ramsey-coloring-spec v1\n";
    out << "k " << k << "\n";
    out << "seed " << seed << "\n";
    out << "bit_budget " << bit_budget << "\n";
    out << "cc_k " << constants.k << "\n";
    out << "cc_m " << constants.m << "\n";
    out << "cc_c3 " << fmt_double(constants.c3) << "\n";
    out << "cc_theta " << fmt_double(constants.theta) << "\n";
    out << "cc_sub_density " << fmt_double(constants.sub_density) << "\n";
    out << "cc_clique_bound " << constants.clique_bound << "\n";
    out << "cc_epsilon " << fmt_double(constants.epsilon) << "\n";
    out << "cc_goodness_C " << fmt_double(constants.goodness_C) << "\n";
    out << "cc_s_blocks " << fmt_double(constants.s_blocks) << "\n";
    out << "cc_mode " << constants.mode << "\n";
    out << "base_s " << base.s() << "\n";
    out << "base_seed " << base.seed() << "\n";
    out << "[verification]\n" << base.verification();
    if (!base.verification().empty() && base.verification().back() != '\n')
        out << "\n";
    out << "[end]\n";
    return out.str();
}

ColoringSpec ColoringSpec::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "ramsey-coloring-spec v1")
        throw std::runtime_error("coloring spec: bad magic line");
    std::map<std::string, std::string> kv;
    std::string verification;
    bool in_verification = false;
    while (std::getline(in, line)) {
        if (line == "[verification]") {
            in_verification = true;
            continue;
        }
        if (line == "[end]") {
            in_verification = false;
            continue;
        }
        if (in_verification) {
            verification += line;
            verification += '\n';
            continue;
        }
        auto sp = line.find(' ');
        if (sp == std::string::npos) continue;
        kv[line.substr(0, sp)] = line.substr(sp + 1);
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::runtime_error("coloring spec: missing key " + key);
        return it->second;
    };
    ColoringSpec spec;
    spec.k = std::stoi(need("k"));
    spec.seed = std::stoull(need("seed"));
    spec.bit_budget = std::stol(need("bit_budget"));
    spec.constants.k = std::stoi(need("cc_k"));
    spec.constants.m = std::stol(need("cc_m"));
    spec.constants.c3 = std::stod(need("cc_c3"));
    spec.constants.theta = std::stod(need("cc_theta"));
    spec.constants.sub_density = std::stod(need("cc_sub_density"));
    spec.constants.clique_bound = std::stol(need("cc_clique_bound"));
    spec.constants.epsilon = std::stod(need("cc_epsilon"));
    spec.constants.goodness_C = std::stod(need("cc_goodness_C"));
    spec.constants.s_blocks = std::stod(need("cc_s_blocks"));
    spec.constants.mode = need("cc_mode");
    for (int j = 3; j <= spec.k; ++j) {
        TowerSize ts = tower_size_from_exponent(j, spec.constants.base_exponent(),
                                                spec.bit_budget);
        if (!ts.materializable) throw std::runtime_error("coloring spec: " + ts.note);
        spec.msizes.push_back(ts.value);
    }
    long s = std::stol(need("base_s"));
    if (Nat(s) != spec.msizes.front())
        throw std::runtime_error("coloring spec: base_s != M_3");
    spec.base = BaseColoring::sample(s, std::stoull(need("base_seed")));
    spec.base.set_verification(verification);
    return spec;
}

void ColoringSpec::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize();
}

ColoringSpec ColoringSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

}  // namespace ramsey
