#include "ramsey/constructions.hpp"

#include "ramsey/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ramsey {

namespace {

std::string join_ints(const std::vector<int>& vs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out << ' ';
        out << vs[i];
    }
    return out.str();
}

std::string describe_parts(const std::vector<std::vector<int>>& parts) {
    std::ostringstream out;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        out << "{" << join_ints(p) << "}";
    }
    return out.str();
}

// visit all t-subsets of {1..n}
bool for_each_subset1(int n, int t,
                      const std::function<bool(const std::vector<int>&)>& cb) {
    std::vector<int> idx(static_cast<std::size_t>(t));
    std::function<bool(int, int)> rec = [&](int pos, int start) -> bool {
        if (pos == t) return cb(idx);
        for (int v = start; v <= n - (t - pos); ++v) {
            idx[static_cast<std::size_t>(pos)] = v;
            if (!rec(pos + 1, v + 1)) return false;
        }
        return true;
    };
    return rec(0, 1);
}

std::vector<int> random_subset1(Rng& rng, int n, int t) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < t; ++i) {
        int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + t);
    std::sort(out.begin(), out.end());
    return out;
}

long long bell_number(int n) {
    // Bell triangle; saturates instead of overflowing
    std::vector<long long> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<long long> next;
        next.reserve(static_cast<std::size_t>(i) + 1);
        next.push_back(row.back());
        for (long long v : row) {
            long long s = next.back() + v;
            if (s < 0) s = std::numeric_limits<long long>::max();
            next.push_back(s);
        }
        row = std::move(next);
    }
    return row.front();
}

}  // namespace

KGraph sample_kgraph(int n, int k, double p, std::uint64_t seed) {
    if (p < 0 || p > 1) throw std::invalid_argument("sample_kgraph: p outside [0,1]");
    KGraph g(k, n);
    std::uint64_t rank = 0;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            double u = (mix64(seed, rank) >> 11) * 0x1.0p-53;
            if (u < p) g.edges.push_back(idx);
            ++rank;
            return;
        }
        for (int v = start; v <= n - (k - pos - 1); ++v) {
            idx[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, v + 1);
        }
    };
    if (k <= n) rec(0, 1);
    g.canonicalize();
    return g;
}

KGraph sample_3graph(int n, double p, std::uint64_t seed) {
    return sample_kgraph(n, 3, p, seed);
}

long long cross_sum(const KGraph& G, const std::vector<std::vector<int>>& parts) {
    if (G.k != 3) throw std::invalid_argument("cross_sum: G must be 3-uniform");
    std::vector<int> part_of(static_cast<std::size_t>(G.n) + 1, -1);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (int v : parts[i]) {
            if (v < 1 || v > G.n)
                throw std::invalid_argument("cross_sum: vertex out of range");
            if (part_of[static_cast<std::size_t>(v)] != -1)
                throw std::invalid_argument("cross_sum: parts not disjoint");
            part_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
    for (int v = 1; v <= G.n; ++v)
        if (part_of[static_cast<std::size_t>(v)] == -1)
            throw std::invalid_argument("cross_sum: parts do not cover V(G)");
    std::set<std::array<int, 3>> hit;
    for (const auto& e : G.edges) {
        std::array<int, 3> t{part_of[static_cast<std::size_t>(e[0])],
                             part_of[static_cast<std::size_t>(e[1])],
                             part_of[static_cast<std::size_t>(e[2])]};
        std::sort(t.begin(), t.end());
        if (t[0] == t[1] || t[1] == t[2]) continue;  // not one per part
        hit.insert(t);
    }
    long long total = 0;
    for (const auto& t : hit)
        total += static_cast<long long>(parts[static_cast<std::size_t>(t[0])].size()) *
                 static_cast<long long>(parts[static_cast<std::size_t>(t[1])].size()) *
                 static_cast<long long>(parts[static_cast<std::size_t>(t[2])].size());
    return total;
}

GmResult check_Gm(const KGraph& G, long m, long s, double theta,
                  const CheckMode& mode, long long enum_budget) {
    if (G.k != 3) throw std::invalid_argument("check_Gm: G must be 3-uniform");
    if (m < 1 || s < 3) throw std::invalid_argument("check_Gm: need m >= 1, s >= 3");
    GmResult res;
    std::ostringstream rec;
    const int n = G.n;
    const long cap = n / m;  // |V_i| <= n/m
    const double threshold = theta * static_cast<double>(binomial(n, 3));
    rec << "op check_Gm n=" << n << " m=" << m << " s=" << s << " theta=" << theta
        << " cap=" << cap << " threshold=" << threshold
        << " mode=" << mode.describe() << "\n";

    if (cap * s < n) {
        // no admissible partition exists; the universal condition holds vacuously
        rec << "result pass (no admissible partition: s*floor(n/m) < n)\n";
        res.status = CheckStatus::pass;
        res.record = rec.str();
        return res;
    }

    auto try_partition = [&](const std::vector<std::vector<int>>& parts) -> bool {
        long long cs = cross_sum(G, parts);
        if (static_cast<double>(cs) <= threshold) {
            PartitionWitness w;
            for (const auto& p : parts)
                if (!p.empty()) w.parts.push_back(p);
            w.cross_sum = cs;
            res.witness = std::move(w);
            return true;
        }
        return false;
    };

    if (mode.exhaustive()) {
        if (bell_number(n) > enum_budget) {
            res.status = CheckStatus::refused;
            rec << "result refused partition enumeration over budget " << enum_budget
                << "\n";
            res.record = rec.str();
            return res;
        }
        // restricted growth strings, filtered by part size and count caps
        std::vector<int> a(static_cast<std::size_t>(n), 0);
        std::vector<int> size(static_cast<std::size_t>(n) + 1, 0);
        bool found = false;
        std::function<void(int, int)> rec_rgs = [&](int i, int used) {
            if (found) return;
            if (i == n) {
                std::vector<std::vector<int>> parts(static_cast<std::size_t>(used));
                for (int v = 0; v < n; ++v)
                    parts[static_cast<std::size_t>(a[static_cast<std::size_t>(v)])]
                        .push_back(v + 1);
                if (try_partition(parts)) found = true;
                return;
            }
            int limit = std::min<int>(used, static_cast<int>(s) - 1);
            for (int p = 0; p <= limit; ++p) {
                if (size[static_cast<std::size_t>(p)] >= cap) continue;
                a[static_cast<std::size_t>(i)] = p;
                size[static_cast<std::size_t>(p)]++;
                rec_rgs(i + 1, std::max(used, p + 1));
                size[static_cast<std::size_t>(p)]--;
                if (found) return;
            }
        };
        rec_rgs(0, 0);
        if (found) {
            res.status = CheckStatus::fail;
            rec << "result fail crossSum=" << res.witness->cross_sum << " parts "
                << describe_parts(res.witness->parts) << "\n";
        } else {
            res.status = CheckStatus::pass;
            rec << "result pass (exhaustive: member of the class)\n";
        }
        res.record = rec.str();
        return res;
    }

    Rng rng(mode.seed);
    for (long it = 0; it < mode.samples; ++it) {
        // random admissible partition into at most s parts
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 1);
        rng.shuffle(order);
        std::vector<std::vector<int>> parts(static_cast<std::size_t>(s));
        bool ok = true;
        for (int v : order) {
            std::vector<int> open;
            for (int p = 0; p < s; ++p)
                if (static_cast<long>(parts[static_cast<std::size_t>(p)].size()) < cap)
                    open.push_back(p);
            if (open.empty()) {
                ok = false;
                break;
            }
            int p = open[rng.next_below(open.size())];
            parts[static_cast<std::size_t>(p)].push_back(v);
        }
        if (!ok) continue;
        for (auto& p : parts) std::sort(p.begin(), p.end());
        if (try_partition(parts)) {
            res.status = CheckStatus::fail;
            rec << "result fail after " << (it + 1)
                << " samples crossSum=" << res.witness->cross_sum << " parts "
                << describe_parts(res.witness->parts) << "\n";
            res.record = rec.str();
            return res;
        }
    }
    res.status = CheckStatus::pass;
    rec << "result pass (no violation found among " << mode.samples
        << " sampled partitions)\n";
    res.record = rec.str();
    return res;
}

GoodResult check_good(const KGraph& H, double alpha, long m, long s, double theta,
                      const CheckMode& mode, long long enum_budget) {
    if (!(alpha > 0 && alpha <= 1))
        throw std::invalid_argument("check_good: alpha outside (0,1]");
    GoodResult res;
    std::ostringstream rec;
    const int n = H.n;
    const int r = H.k - 3;
    const long min_size = static_cast<long>(std::ceil(alpha * n - 1e-9));
    rec << "op check_good k=" << H.k << " n=" << n << " alpha=" << alpha
        << " m=" << m << " minSize=" << min_size << " mode=" << mode.describe()
        << "\n";

    auto run_gm = [&](const KGraph& G, const CheckMode& inner) {
        return check_Gm(G, m, s, theta, inner, enum_budget);
    };

    if (r == 0) {
        // empty product of W's: goodness of a 3-graph is membership itself
        GmResult gm = run_gm(H, mode);
        res.status = gm.status;
        res.witness_partition = gm.witness;
        if (gm.status == CheckStatus::fail) {
            std::vector<int> all(static_cast<std::size_t>(n));
            std::iota(all.begin(), all.end(), 1);
            res.witness_sets = {all};
        }
        rec << gm.record;
        res.record = rec.str();
        return res;
    }

    auto test_candidate = [&](const std::vector<int>& U,
                              const std::vector<std::vector<int>>& Ws,
                              const CheckMode& inner) -> bool {
        KGraph reduced = reduce(H, U, Ws);
        GmResult gm = run_gm(reduced, inner);
        if (gm.status == CheckStatus::fail) {
            res.witness_sets.clear();
            res.witness_sets.push_back(U);
            for (const auto& w : Ws) res.witness_sets.push_back(w);
            // witness partition is over the reduced graph's labels [1, |U|];
            // translate back to the original U labels
            PartitionWitness w = *gm.witness;
            std::vector<int> u_sorted = U;
            std::sort(u_sorted.begin(), u_sorted.end());
            for (auto& part : w.parts)
                for (auto& v : part) v = u_sorted[static_cast<std::size_t>(v - 1)];
            res.witness_partition = std::move(w);
            return true;
        }
        return false;
    };

    if (mode.exhaustive()) {
        double assignments = std::pow(static_cast<double>(r + 2), n);
        if (assignments > static_cast<double>(enum_budget)) {
            res.status = CheckStatus::refused;
            rec << "result refused (" << (r + 2) << "^" << n << " assignments over budget)\n";
            res.record = rec.str();
            return res;
        }
        std::vector<int> assign(static_cast<std::size_t>(n), 0);
        bool failed = false;
        std::function<void(int)> walk = [&](int i) {
            if (failed) return;
            if (i == n) {
                std::vector<int> U;
                std::vector<std::vector<int>> Ws(static_cast<std::size_t>(r));
                for (int v = 0; v < n; ++v) {
                    int aa = assign[static_cast<std::size_t>(v)];
                    if (aa == 1) U.push_back(v + 1);
                    else if (aa >= 2) Ws[static_cast<std::size_t>(aa - 2)].push_back(v + 1);
                }
                if (static_cast<long>(U.size()) < min_size) return;
                for (const auto& w : Ws)
                    if (static_cast<long>(w.size()) < min_size) return;
                if (test_candidate(U, Ws, mode)) failed = true;
                return;
            }
            for (int c = 0; c < r + 2; ++c) {
                assign[static_cast<std::size_t>(i)] = c;
                walk(i + 1);
                if (failed) return;
            }
        };
        walk(0);
        if (failed) {
            res.status = CheckStatus::fail;
            rec << "result fail (witness sets found)\n";
        } else {
            res.status = CheckStatus::pass;
            rec << "result pass (exhaustive)\n";
        }
        res.record = rec.str();
        return res;
    }

    if (static_cast<long>(r + 1) * min_size > n) {
        rec << "result pass (no disjoint sets of the required size exist)\n";
        res.status = CheckStatus::pass;
        res.record = rec.str();
        return res;
    }
    Rng rng(mode.seed);
    for (long it = 0; it < mode.samples; ++it) {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 1);
        rng.shuffle(order);
        std::vector<int> U(order.begin(), order.begin() + min_size);
        std::sort(U.begin(), U.end());
        std::vector<std::vector<int>> Ws;
        for (int i = 0; i < r; ++i) {
            auto first = order.begin() + (i + 1) * min_size;
            std::vector<int> w(first, first + min_size);
            std::sort(w.begin(), w.end());
            Ws.push_back(std::move(w));
        }
        CheckMode inner = CheckMode::MonteCarlo(
            mode.samples, derive_seed(mode.seed, "good-inner",
                                      static_cast<std::uint64_t>(it)));
        if (test_candidate(U, Ws, inner)) {
            res.status = CheckStatus::fail;
            rec << "result fail after " << (it + 1) << " sampled set tuples\n";
            res.record = rec.str();
            return res;
        }
    }
    res.status = CheckStatus::pass;
    rec << "result pass (no violation found among " << mode.samples
        << " sampled set tuples)\n";
    res.record = rec.str();
    return res;
}

BuildHRResult build_HR(int k, double alpha, long m, int n,
                       const ConstructionConstants& cc, std::uint64_t seed,
                       int max_retries, long gm_s, const CheckMode& goodness_mode) {
    if (!(alpha > 0 && alpha <= 1))
        throw std::invalid_argument("build_HR: alpha outside (0,1]");
    BuildHRResult out;
    std::ostringstream rec;
    const int N = 2 * n;
    const double C = cc.goodness_C;
    double p = C * static_cast<double>(m) /
               (2.0 * std::pow(static_cast<double>(N), k - 1));
    if (p > 1.0) p = 1.0;
    const double edge_cap = C * static_cast<double>(m) * N / (2.0 * k);
    rec << "op build_HR k=" << k << " n=" << n << " N=" << N << " m=" << m
        << " alpha=" << alpha << " C=" << C << " p=" << p
        << " edgeCap=" << edge_cap << "\n";

    for (int attempt = 1; attempt <= max_retries; ++attempt) {
        std::uint64_t s_a = derive_seed(seed, "HR-sample",
                                        static_cast<std::uint64_t>(attempt));
        KGraph H = sample_kgraph(N, k, p, s_a);
        rec << "attempt " << attempt << " seed " << s_a << " edges "
            << H.edges.size() << "\n";
        if (static_cast<double>(H.edges.size()) > edge_cap) {
            rec << "  reject: edge count over cap\n";
            continue;
        }
        CheckMode gmode = goodness_mode;
        if (!gmode.exhaustive())
            gmode.seed = derive_seed(seed, "HR-goodness",
                                     static_cast<std::uint64_t>(attempt));
        GoodResult good = check_good(H, alpha / 2.0, m, gm_s, cc.theta, gmode);
        rec << good.record;
        if (good.status != CheckStatus::pass) {
            rec << "  reject: goodness check did not pass\n";
            continue;
        }
        // trim the N/2 vertices of largest degree (ties by smaller id first)
        std::vector<int> deg = H.degrees();
        std::vector<int> order(static_cast<std::size_t>(N));
        std::iota(order.begin(), order.end(), 1);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            int da = deg[static_cast<std::size_t>(a - 1)];
            int db = deg[static_cast<std::size_t>(b - 1)];
            if (da != db) return da > db;
            return a < b;
        });
        std::vector<int> kept(order.begin() + N / 2, order.end());
        std::sort(kept.begin(), kept.end());
        std::vector<int> relabel(static_cast<std::size_t>(N) + 1, 0);
        for (std::size_t i = 0; i < kept.size(); ++i)
            relabel[static_cast<std::size_t>(kept[i])] = static_cast<int>(i) + 1;
        KGraph H2(k, n);
        for (const auto& e : H.edges) {
            std::vector<int> e2;
            bool keep = true;
            for (int v : e) {
                int nv = relabel[static_cast<std::size_t>(v)];
                if (nv == 0) {
                    keep = false;
                    break;
                }
                e2.push_back(nv);
            }
            if (keep) H2.edges.push_back(std::move(e2));
        }
        H2.canonicalize();
        int delta = H2.max_degree();
        rec << "trimmed to n=" << n << " edges=" << H2.edges.size()
            << " maxDegree=" << delta << " cap=" << (C * static_cast<double>(m))
            << "\n";
        if (static_cast<double>(delta) > C * static_cast<double>(m)) {
            rec << "  reject: max degree over C*m\n";
            continue;
        }
        out.ok = true;
        out.graph = std::move(H2);
        out.attempts = attempt;
        out.seed_used = s_a;
        rec << "result pass\n";
        out.record = rec.str();
        return out;
    }
    rec << "result fail (retries exhausted)\n";
    out.record = rec.str();
    return out;
}

Graph2 sample_F(int M, int d, std::uint64_t seed) {
    if (M < 1 || d < 0) throw std::invalid_argument("sample_F: bad parameters");
    Graph2 F;
    F.n = M;
    F.vertices.resize(static_cast<std::size_t>(M));
    std::iota(F.vertices.begin(), F.vertices.end(), 1);
    if (d == 0 || M < 2) {
        F.canonicalize();
        return F;
    }
    std::vector<int> stubs;
    for (int v = 1; v <= M; ++v)
        for (int i = 0; i < d; ++i) stubs.push_back(v);
    if (stubs.size() % 2) stubs.pop_back();  // near-regular when M*d is odd
    Rng rng(seed);
    rng.shuffle(stubs);
    std::set<std::pair<int, int>> edges;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        int a = stubs[i], b = stubs[i + 1];
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        edges.insert({a, b});
    }
    F.edges.assign(edges.begin(), edges.end());
    F.canonicalize();
    return F;
}

ExpansionResult check_F_expansion(const Graph2& F, int k_neighbors, double eps,
                                  const CheckMode& mode, long long enum_budget) {
    if (!(eps > 0 && eps < 1))
        throw std::invalid_argument("check_F_expansion: eps outside (0,1)");
    ExpansionResult res;
    std::ostringstream rec;
    const int M = static_cast<int>(F.vertices.size());
    const int u_min = static_cast<int>(std::ceil(eps * M - 1e-9));
    auto adj = F.adjacency();
    rec << "op check_F_expansion M=" << M << " kNeighbors=" << k_neighbors
        << " eps=" << eps << " minU=" << u_min << " mode=" << mode.describe()
        << "\n";

    auto violates = [&](const std::vector<int>& U) -> bool {
        std::vector<char> inU(static_cast<std::size_t>(F.n) + 1, 0);
        for (int v : U) inU[static_cast<std::size_t>(v)] = 1;
        int bad = 0;
        for (int v : F.vertices) {
            int cnt = 0;
            for (int u : adj[static_cast<std::size_t>(v)])
                if (inU[static_cast<std::size_t>(u)]) ++cnt;
            if (cnt < k_neighbors) ++bad;
        }
        return static_cast<double>(bad) > eps * M;
    };

    if (mode.exhaustive()) {
        long long total = 0;
        for (int t = std::max(u_min, 1); t <= M; ++t) {
            total += binomial(M, t);
            if (total > enum_budget) break;
        }
        if (total > enum_budget) {
            res.status = CheckStatus::refused;
            rec << "result refused subset enumeration over budget\n";
            res.record = rec.str();
            return res;
        }
        for (int t = std::max(u_min, 1); t <= M; ++t) {
            std::vector<int> bad_u;
            for_each_subset1(M, t, [&](const std::vector<int>& idx) {
                std::vector<int> U;
                for (int i : idx) U.push_back(F.vertices[static_cast<std::size_t>(i - 1)]);
                if (violates(U)) {
                    bad_u = U;
                    return false;
                }
                return true;
            });
            if (!bad_u.empty()) {
                res.status = CheckStatus::fail;
                res.witness = bad_u;
                rec << "result fail U={" << join_ints(bad_u) << "}\n";
                res.record = rec.str();
                return res;
            }
        }
        res.status = CheckStatus::pass;
        rec << "result pass (exhaustive)\n";
        res.record = rec.str();
        return res;
    }

    Rng rng(mode.seed);
    for (long it = 0; it < mode.samples; ++it) {
        int t = std::max(u_min, 1) +
                static_cast<int>(rng.next_below(
                    static_cast<std::uint64_t>(M - std::max(u_min, 1) + 1)));
        auto idx = random_subset1(rng, M, t);
        std::vector<int> U;
        for (int i : idx) U.push_back(F.vertices[static_cast<std::size_t>(i - 1)]);
        if (violates(U)) {
            res.status = CheckStatus::fail;
            res.witness = U;
            rec << "result fail after " << (it + 1) << " samples U={"
                << join_ints(U) << "}\n";
            res.record = rec.str();
            return res;
        }
    }
    res.status = CheckStatus::pass;
    rec << "result pass (no violation found among " << mode.samples
        << " sampled subsets)\n";
    res.record = rec.str();
    return res;
}

KGraph sample_T(int n, int s, int target_edges, std::uint64_t seed) {
    if (s > n) throw std::invalid_argument("sample_T: s > n");
    KGraph T(s, n);
    std::set<std::vector<int>> blocks;
    for (int i = 0; i < target_edges; ++i) {
        Rng rng(derive_seed(seed, "T-block", static_cast<std::uint64_t>(i)));
        blocks.insert(random_subset1(rng, n, s));
    }
    T.edges.assign(blocks.begin(), blocks.end());
    T.canonicalize();
    return T;
}

SpreadResult check_T(const KGraph& T, long C_cap, double eps,
                     const CheckMode& mode, long long enum_budget) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("check_T: eps outside (0,1)");
    SpreadResult res;
    std::ostringstream rec;
    const int n = T.n;
    const int s = T.k;
    const double eps_s = eps * s;
    rec << "op check_T n=" << n << " s=" << s << " blocks=" << T.edges.size()
        << " C_cap=" << C_cap << " eps=" << eps << " mode=" << mode.describe()
        << "\n";

    // (i) degree cap
    int delta = T.max_degree();
    if (delta > C_cap) {
        res.status = CheckStatus::fail;
        res.violated = "degree";
        res.witness = "maxDegree=" + std::to_string(delta);
        rec << "result fail (i) " << res.witness << "\n";
        res.record = rec.str();
        return res;
    }
    // (ii) pairwise overlaps
    for (std::size_t i = 0; i < T.edges.size(); ++i)
        for (std::size_t j = i + 1; j < T.edges.size(); ++j) {
            std::vector<int> inter;
            std::set_intersection(T.edges[i].begin(), T.edges[i].end(),
                                  T.edges[j].begin(), T.edges[j].end(),
                                  std::back_inserter(inter));
            if (static_cast<double>(inter.size()) >= eps_s) {
                res.status = CheckStatus::fail;
                res.violated = "overlap";
                res.witness = "blocks " + std::to_string(i) + "," + std::to_string(j) +
                              " overlap=" + std::to_string(inter.size());
                rec << "result fail (ii) " << res.witness << "\n";
                res.record = rec.str();
                return res;
            }
        }
    // (iii) proportional intersection with large sets A
    auto deviating_blocks = [&](const std::vector<int>& A) -> long {
        std::vector<char> inA(static_cast<std::size_t>(n) + 1, 0);
        for (int v : A) inA[static_cast<std::size_t>(v)] = 1;
        long bad = 0;
        double expect = static_cast<double>(A.size()) / n * s;
        for (const auto& e : T.edges) {
            int cnt = 0;
            for (int v : e)
                if (inA[static_cast<std::size_t>(v)]) ++cnt;
            if (std::abs(static_cast<double>(cnt) - expect) > eps_s) ++bad;
        }
        return bad;
    };
    const long bad_cap = static_cast<long>(
        eps * static_cast<double>(T.edges.size()));
    const int a_min = static_cast<int>(std::ceil(eps * n - 1e-9));
    if (mode.exhaustive()) {
        long long total = 0;
        for (int t = std::max(a_min, 1); t <= n; ++t) {
            total += binomial(n, t);
            if (total > enum_budget) break;
        }
        if (total > enum_budget) {
            res.status = CheckStatus::refused;
            rec << "result refused A-set enumeration over budget\n";
            res.record = rec.str();
            return res;
        }
        for (int t = std::max(a_min, 1); t <= n; ++t) {
            std::vector<int> bad_a;
            for_each_subset1(n, t, [&](const std::vector<int>& A) {
                if (deviating_blocks(A) > bad_cap) {
                    bad_a = A;
                    return false;
                }
                return true;
            });
            if (!bad_a.empty()) {
                res.status = CheckStatus::fail;
                res.violated = "proportional";
                res.witness = "A={" + join_ints(bad_a) + "}";
                rec << "result fail (iii) " << res.witness << "\n";
                res.record = rec.str();
                return res;
            }
        }
        res.status = CheckStatus::pass;
        rec << "result pass (exhaustive)\n";
        res.record = rec.str();
        return res;
    }
    Rng rng(mode.seed);
    for (long it = 0; it < mode.samples; ++it) {
        int t = std::max(a_min, 1) +
                static_cast<int>(rng.next_below(
                    static_cast<std::uint64_t>(n - std::max(a_min, 1) + 1)));
        auto A = random_subset1(rng, n, t);
        if (deviating_blocks(A) > bad_cap) {
            res.status = CheckStatus::fail;
            res.violated = "proportional";
            res.witness = "A={" + join_ints(A) + "}";
            rec << "result fail (iii) after " << (it + 1) << " samples "
                << res.witness << "\n";
            res.record = rec.str();
            return res;
        }
    }
    res.status = CheckStatus::pass;
    rec << "result pass (no violation found among " << mode.samples
        << " sampled A-sets)\n";
    res.record = rec.str();
    return res;
}

BuildHResult build_H(int k, int n, const ConstructionConstants& cc,
                     const BuildHParams& params, std::uint64_t seed) {
    BuildHResult out;
    std::ostringstream rec;
    rec << "op build_H k=" << k << " n=" << n << " seed=" << seed << "\n";
    if (params.s_block > n) {
        out.failed_stage = "parameters";
        rec << "fail: block size s exceeds n\n";
        out.record = rec.str();
        return out;
    }

    // stage 1: random part
    BuildHRResult hr = build_HR(k, params.alpha, params.m, n, cc,
                                derive_seed(seed, "build-H-HR", 0),
                                params.max_retries, params.gm_s,
                                params.check_mode);
    rec << hr.record;
    if (!hr.ok) {
        out.failed_stage = "H_R";
        out.record = rec.str();
        return out;
    }
    out.HR = hr.graph;

    // stage 2: spread hypergraph T
    bool t_ok = false;
    for (int attempt = 1; attempt <= params.max_retries; ++attempt) {
        std::uint64_t ts = derive_seed(seed, "build-H-T",
                                       static_cast<std::uint64_t>(attempt));
        KGraph T = sample_T(n, params.s_block, params.t_edges, ts);
        CheckMode m = params.check_mode;
        if (!m.exhaustive())
            m.seed = derive_seed(seed, "build-H-T-check",
                                 static_cast<std::uint64_t>(attempt));
        SpreadResult sr = check_T(T, params.t_degree_cap, params.eps, m);
        rec << "T attempt " << attempt << " seed " << ts << "\n" << sr.record;
        if (sr.status == CheckStatus::pass) {
            out.blocks = std::move(T);
            t_ok = true;
            break;
        }
    }
    if (!t_ok) {
        out.failed_stage = "T";
        out.record = rec.str();
        return out;
    }

    // stage 3: expander template F
    bool f_ok = false;
    for (int attempt = 1; attempt <= params.max_retries; ++attempt) {
        std::uint64_t fs = derive_seed(seed, "build-H-F",
                                       static_cast<std::uint64_t>(attempt));
        Graph2 F = sample_F(params.s_block, params.f_degree, fs);
        CheckMode m = params.check_mode;
        if (!m.exhaustive())
            m.seed = derive_seed(seed, "build-H-F-check",
                                 static_cast<std::uint64_t>(attempt));
        ExpansionResult er = check_F_expansion(F, params.f_k_neighbors, params.eps, m);
        rec << "F attempt " << attempt << " seed " << fs << "\n" << er.record;
        if (er.status == CheckStatus::pass) {
            out.F = std::move(F);
            f_ok = true;
            break;
        }
    }
    if (!f_ok) {
        out.failed_stage = "F";
        out.record = rec.str();
        return out;
    }

    // stage 4: per-block copies of F, lifted and overlaid
    GraphFamily fam;
    for (const auto& block : out.blocks.edges) {
        Graph2 copy;
        copy.n = n;
        copy.vertices = block;  // block vertices, sorted
        for (const auto& [a, b] : out.F.edges)
            copy.edges.push_back({block[static_cast<std::size_t>(a - 1)],
                                  block[static_cast<std::size_t>(b - 1)]});
        copy.canonicalize();
        fam.members.push_back(std::move(copy));
    }
    out.HE = lift_family(fam, k, n);
    out.H = graph_union(out.HR, out.HE);

    const int d_hr = out.HR.max_degree();
    const int d_he = out.HE.max_degree();
    const int d_h = out.H.max_degree();
    const double he_bound = static_cast<double>(out.blocks.max_degree()) * 2.0 *
                            params.s_block *
                            std::pow(static_cast<double>(params.f_degree),
                                     static_cast<double>(k - 2));
    rec << "degree audit: Delta(H_R)=" << d_hr << " Delta(H_E)=" << d_he
        << " Delta(H)=" << d_h << " Delta(T)*2s*d^(k-2)=" << he_bound << "\n";
    if (static_cast<double>(d_he) > he_bound) {
        out.failed_stage = "degree-audit";
        rec << "fail: Delta(H_E) exceeds the lift bound\n";
        out.record = rec.str();
        return out;
    }
    if (params.delta_target > 0 && d_h > params.delta_target) {
        out.failed_stage = "degree-target";
        rec << "fail: Delta(H)=" << d_h << " exceeds target " << params.delta_target
            << "\n";
        out.record = rec.str();
        return out;
    }
    rec << "result pass\n";
    out.ok = true;
    out.record = rec.str();
    return out;
}

}  // namespace ramsey
