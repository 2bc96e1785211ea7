#include "ramsey/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ramsey {

bool is_embedding(const Embedding& h, const Nat& M) {
    if (h.bound < 1) return false;
    std::map<Nat, long> mult;
    for (const auto& x : h.target) {
        if (x < 0 || x >= M) return false;
        if (++mult[x] > h.bound) return false;
    }
    return true;
}

Classification classify_embedding(const KGraph& H, const Embedding& h,
                                  const ColoringSpec& spec) {
    if (static_cast<int>(h.target.size()) != H.n)
        throw std::invalid_argument("classify_embedding: target size != |V(H)|");
    if (!is_embedding(h, spec.M(H.k)))
        throw std::invalid_argument("classify_embedding: multiplicity violation");
    Classification cls;
    cls.mono_red = cls.mono_blue = cls.almost_red = cls.almost_blue = true;
    for (const auto& e : H.edges) {
        std::vector<Nat> xs;
        xs.reserve(e.size());
        for (int v : e) xs.push_back(h.target[static_cast<std::size_t>(v - 1)]);
        std::sort(xs.begin(), xs.end());
        bool collapsed = std::adjacent_find(xs.begin(), xs.end()) != xs.end();
        Color c = spec.phik(H.k, xs);
        if (c != Color::red) cls.mono_red = false;
        if (c != Color::blue) cls.mono_blue = false;
        if (!collapsed) {
            if (c != Color::red) cls.almost_red = false;
            if (c != Color::blue) cls.almost_blue = false;
        }
    }
    return cls;
}

SearchOutcome search_embedding(const KGraph& H, const ColoringSpec& spec, long b,
                               Color color, std::uint64_t budget) {
    if (H.k != spec.k)
        throw std::invalid_argument("search_embedding: uniformity mismatch");
    if (b < 1) throw std::invalid_argument("search_embedding: b must be >= 1");
    const Nat& Mn = spec.M(H.k);
    if (Mn > 4'000'000)
        throw std::runtime_error("budget: M too large for explicit search");
    const long M = Mn.convert_to<long>();

    SearchOutcome out;
    const int n = H.n;
    // assignment order: decreasing degree, ties by id
    std::vector<int> deg = H.degrees();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int a, int c) {
        int da = deg[static_cast<std::size_t>(a - 1)];
        int dc = deg[static_cast<std::size_t>(c - 1)];
        if (da != dc) return da > dc;
        return a < c;
    });
    std::vector<int> pos_of(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i)
        pos_of[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    // edges checked as soon as their last vertex is assigned
    std::vector<std::vector<std::size_t>> complete_at(static_cast<std::size_t>(n));
    for (std::size_t ei = 0; ei < H.edges.size(); ++ei) {
        int last = 0;
        for (int v : H.edges[ei])
            last = std::max(last, pos_of[static_cast<std::size_t>(v)]);
        complete_at[static_cast<std::size_t>(last)].push_back(ei);
    }

    std::vector<long> value(static_cast<std::size_t>(n), -1);  // by position
    std::vector<long> assigned_of(static_cast<std::size_t>(n) + 1, -1);  // by id
    std::vector<long> mult(static_cast<std::size_t>(M), 0);
    bool over_budget = false;

    std::function<bool(int)> rec = [&](int p) -> bool {
        if (p == n) return true;
        for (long x = 0; x < M; ++x) {
            if (mult[static_cast<std::size_t>(x)] >= b) continue;
            ++out.nodes;
            if (budget != 0 && out.nodes > budget) {
                over_budget = true;
                return false;
            }
            int vid = order[static_cast<std::size_t>(p)];
            value[static_cast<std::size_t>(p)] = x;
            assigned_of[static_cast<std::size_t>(vid)] = x;
            mult[static_cast<std::size_t>(x)]++;
            bool ok = true;
            for (std::size_t ei : complete_at[static_cast<std::size_t>(p)]) {
                std::vector<Nat> xs;
                for (int v : H.edges[ei])
                    xs.emplace_back(assigned_of[static_cast<std::size_t>(v)]);
                std::sort(xs.begin(), xs.end());
                if (spec.phik(H.k, xs) != color) {
                    ok = false;
                    break;
                }
            }
            if (ok && rec(p + 1)) return true;
            mult[static_cast<std::size_t>(x)]--;
            assigned_of[static_cast<std::size_t>(vid)] = -1;
            if (over_budget) return false;
        }
        return false;
    };

    bool found = rec(0);
    if (over_budget) {
        out.status = SearchStatus::budget_exceeded;
        return out;
    }
    if (found) {
        out.status = SearchStatus::found;
        out.embedding.bound = b;
        out.embedding.target.resize(static_cast<std::size_t>(n));
        for (int v = 1; v <= n; ++v)
            out.embedding.target[static_cast<std::size_t>(v - 1)] =
                assigned_of[static_cast<std::size_t>(v)];
        return out;
    }
    out.status = SearchStatus::exhausted_none;
    return out;
}

CertifyOutcome certify_lower_bound(const KGraph& H, const ColoringSpec& spec,
                                   long b, std::uint64_t budget) {
    CertifyOutcome out;
    SearchOutcome red = search_embedding(H, spec, b, Color::red, budget);
    out.nodes += red.nodes;
    if (red.status == SearchStatus::budget_exceeded) {
        out.inconclusive = true;
        return out;
    }
    if (red.status == SearchStatus::found) {
        out.found = red.embedding;
        out.found_color = Color::red;
        return out;
    }
    SearchOutcome blue = search_embedding(H, spec, b, Color::blue, budget);
    out.nodes += blue.nodes;
    if (blue.status == SearchStatus::budget_exceeded) {
        out.inconclusive = true;
        return out;
    }
    if (blue.status == SearchStatus::found) {
        out.found = blue.embedding;
        out.found_color = Color::blue;
        return out;
    }
    Certificate cert;
    cert.hypergraph = H;
    cert.spec_text = spec.serialize();
    cert.b = b;
    cert.bound = spec.M(H.k) * b;
    cert.nodes_red = red.nodes;
    cert.nodes_blue = blue.nodes;
    cert.exhaustive = true;
    out.certified = true;
    out.certificate = std::move(cert);
    return out;
}

std::string Certificate::serialize() const {
    std::ostringstream out;
    out << "ramsey-certificate v1\n";
    out << "claim no-monochromatic-embedding\n";
    out << "b " << b << "\n";
    out << "bound " << bound.str() << "\n";
    out << "nodes_red " << nodes_red << "\n";
    out << "nodes_blue " << nodes_blue << "\n";
    out << "exhaustive " << (exhaustive ? 1 : 0) << "\n";
    out << "[spec]\n" << spec_text;
    if (!spec_text.empty() && spec_text.back() != '\n') out << "\n";
    out << "[/spec]\n";
    out << "[hypergraph]\n" << ramsey::serialize(hypergraph) << "[/hypergraph]\n";
    return out.str();
}

Certificate Certificate::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "ramsey-certificate v1")
        throw std::runtime_error("certificate: bad magic line");
    Certificate cert;
    std::string section;
    std::string spec_text, graph_text;
    bool saw_claim = false;
    while (std::getline(in, line)) {
        if (line == "[spec]") {
            section = "spec";
            continue;
        }
        if (line == "[/spec]") {
            section.clear();
            continue;
        }
        if (line == "[hypergraph]") {
            section = "graph";
            continue;
        }
        if (line == "[/hypergraph]") {
            section.clear();
            continue;
        }
        if (section == "spec") {
            spec_text += line;
            spec_text += '\n';
            continue;
        }
        if (section == "graph") {
            graph_text += line;
            graph_text += '\n';
            continue;
        }
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "claim") {
            saw_claim = true;
        } else if (key == "b") {
            ls >> cert.b;
        } else if (key == "bound") {
            std::string v;
            ls >> v;
            cert.bound = Nat(v);
        } else if (key == "nodes_red") {
            ls >> cert.nodes_red;
        } else if (key == "nodes_blue") {
            ls >> cert.nodes_blue;
        } else if (key == "exhaustive") {
            int e = 0;
            ls >> e;
            cert.exhaustive = e != 0;
        }
    }
    if (!saw_claim) throw std::runtime_error("certificate: missing claim line");
    cert.spec_text = spec_text;
    cert.hypergraph = parse_kgraph(graph_text);
    return cert;
}

void Certificate::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize();
}

Certificate Certificate::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string verify_certificate(const Certificate& cert, std::uint64_t budget) {
    if (!cert.exhaustive) return "certificate is not marked exhaustive";
    ColoringSpec spec;
    try {
        spec = ColoringSpec::parse(cert.spec_text);
    } catch (const std::exception& e) {
        return std::string("embedded spec does not parse: ") + e.what();
    }
    if (spec.M(spec.k) * cert.b != cert.bound)
        return "recorded bound does not equal M_k(m) * b";
    CertifyOutcome redo = certify_lower_bound(cert.hypergraph, spec, cert.b, budget);
    if (redo.inconclusive) return "re-run exceeded the verification budget";
    if (!redo.certified) return "re-run found a monochromatic embedding";
    if (redo.certificate->nodes_red != cert.nodes_red ||
        redo.certificate->nodes_blue != cert.nodes_blue)
        return "re-run node counts differ from the recorded search";
    return "";
}

DescentStep descend_step(const std::vector<Nat>& xs, std::size_t pivot) {
    if (pivot < 1 || pivot > xs.size())
        throw std::invalid_argument("descend_step: pivot out of range");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i] > xs[i + 1])
            throw std::invalid_argument("descend_step: input not sorted");
    DescentStep out;
    if (pivot == 1) return out;
    const Nat& pivot_value = xs[pivot - 1];
    out.delta_to_pivot.reserve(pivot - 1);
    for (std::size_t i = 0; i < pivot - 1; ++i)
        out.delta_to_pivot.push_back(delta(xs[i], pivot_value));
    // running max of the delta vector over [i, pivot), computed backward
    out.running_max.assign(pivot - 1, 0);
    Nat run = 0;
    for (std::size_t i = pivot - 1; i-- > 0;) {
        Nat d = delta(xs[i], xs[i + 1]);
        if (d > run) run = d;
        out.running_max[i] = run;
    }
    if (out.delta_to_pivot != out.running_max)
        throw std::logic_error("descend_step: formulas disagree");
    return out;
}

bool correlated(const std::vector<int>& B, int interval_lo, int interval_hi,
                int n, int s, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("correlated: eps must be positive");
    long cnt = 0;
    for (int v : B)
        if (v >= interval_lo && v <= interval_hi) ++cnt;
    double interval_len = interval_hi - interval_lo + 1;
    double expect = interval_len / n * s;
    return std::abs(static_cast<double>(cnt) - expect) >= eps * s;
}

IntervalPartition interval_partition(int n, const std::string& strategy) {
    if (strategy != "equal-thirds")
        throw std::invalid_argument("interval_partition: unknown strategy " + strategy);
    if (n < 3)
        throw std::invalid_argument("interval_partition: n too small for three intervals");
    IntervalPartition out;
    out.strategy = strategy;
    int base = n / 3, rem = n % 3;
    int lo = 1;
    for (int i = 0; i < 3; ++i) {
        int size = base + (i < rem ? 1 : 0);
        out.intervals[static_cast<std::size_t>(i)] = {lo, lo + size - 1};
        lo += size;
    }
    return out;
}

std::vector<std::vector<int>> complete_edge_order(int N, int k) {
    return complete_kgraph(N, k).edges;  // canonical order is lexicographic
}

namespace {

// all copies of H in K_N as edge-index bitmasks, deduplicated
std::vector<std::uint64_t> copy_masks(const KGraph& H, int N,
                                      const std::map<std::vector<int>, int>& rank) {
    std::set<std::uint64_t> masks;
    const int v = H.n;
    if (v > N) return {};
    std::vector<int> image(static_cast<std::size_t>(v), 0);
    std::vector<char> used(static_cast<std::size_t>(N) + 1, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == v) {
            std::uint64_t mask = 0;
            for (const auto& e : H.edges) {
                std::vector<int> img;
                for (int w : e) img.push_back(image[static_cast<std::size_t>(w - 1)]);
                std::sort(img.begin(), img.end());
                mask |= 1ULL << rank.at(img);
            }
            masks.insert(mask);
            return;
        }
        for (int t = 1; t <= N; ++t) {
            if (used[static_cast<std::size_t>(t)]) continue;
            used[static_cast<std::size_t>(t)] = 1;
            image[static_cast<std::size_t>(i)] = t;
            rec(i + 1);
            used[static_cast<std::size_t>(t)] = 0;
        }
    };
    rec(0);
    return {masks.begin(), masks.end()};
}

std::map<std::vector<int>, int> edge_ranks(const std::vector<std::vector<int>>& order) {
    std::map<std::vector<int>, int> rank;
    for (std::size_t i = 0; i < order.size(); ++i)
        rank[order[i]] = static_cast<int>(i);
    return rank;
}

}  // namespace

bool contains_mono_copy(const KGraph& H, int N, int k,
                        const std::string& coloring_bits) {
    if (H.k != k) throw std::invalid_argument("contains_mono_copy: uniformity mismatch");
    auto order = complete_edge_order(N, k);
    if (coloring_bits.size() != order.size())
        throw std::invalid_argument("contains_mono_copy: coloring length mismatch");
    auto rank = edge_ranks(order);
    std::uint64_t red = 0;
    for (std::size_t i = 0; i < coloring_bits.size(); ++i)
        if (coloring_bits[i] == '1') red |= 1ULL << i;
    for (std::uint64_t mask : copy_masks(H, N, rank))
        if ((mask & red) == mask || (mask & red) == 0) return true;
    return false;
}

BruteOutcome brute_ramsey_check(const KGraph& H, int N, std::uint64_t budget) {
    auto order = complete_edge_order(N, H.k);
    const std::size_t E = order.size();
    if (E >= 63 || (1ULL << E) > budget)
        throw std::runtime_error("budget: 2^" + std::to_string(E) +
                                 " colorings exceed the enumeration budget");
    auto rank = edge_ranks(order);
    auto masks = copy_masks(H, N, rank);
    const std::uint64_t total = 1ULL << E;
    for (std::uint64_t red = 0; red < total; ++red) {
        bool mono = false;
        for (std::uint64_t mask : masks) {
            if ((mask & red) == mask || (mask & red) == 0) {
                mono = true;
                break;
            }
        }
        if (!mono) {
            BruteOutcome out;
            out.holds = false;
            out.coloring_bits.resize(E, '0');
            for (std::size_t i = 0; i < E; ++i)
                if ((red >> i) & 1) out.coloring_bits[i] = '1';
            return out;
        }
    }
    return {true, ""};
}

}  // namespace ramsey
