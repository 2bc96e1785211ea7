#include "ramsey/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ramsey {

long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

void KGraph::canonicalize() {
    if (k < 2) throw std::invalid_argument("KGraph: uniformity must be >= 2");
    if (n < 0) throw std::invalid_argument("KGraph: negative vertex count");
    for (auto& e : edges) {
        if (static_cast<int>(e.size()) != k)
            throw std::invalid_argument("KGraph: edge arity != k");
        std::sort(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 1 || e[i] > n)
                throw std::invalid_argument("KGraph: vertex out of range");
            if (i > 0 && e[i] == e[i - 1])
                throw std::invalid_argument("KGraph: repeated vertex in edge");
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool KGraph::has_edge(std::vector<int> e) const {
    std::sort(e.begin(), e.end());
    return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<int> KGraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (const auto& e : edges)
        for (int v : e) deg[static_cast<std::size_t>(v - 1)]++;
    return deg;
}

int KGraph::max_degree() const {
    int best = 0;
    for (int d : degrees()) best = std::max(best, d);
    return best;
}

std::string serialize(const KGraph& g) {
    std::ostringstream out;
    out << "k=" << g.k << " n=" << g.n << "\n";
    for (const auto& e : g.edges) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out << ' ';
            out << e[i];
        }
        out << "\n";
    }
    return out.str();
}

KGraph parse_kgraph(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                 ": " + msg);
    };
    KGraph g;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        if (!have_header) {
            std::string tok;
            if (!(ls >> tok)) continue;  // blank line before header
            int k = 0, n = 0;
            if (tok.rfind("k=", 0) != 0) fail("expected header \"k=<int> n=<int>\"");
            try {
                k = std::stoi(tok.substr(2));
            } catch (...) {
                fail("bad k value");
            }
            if (!(ls >> tok) || tok.rfind("n=", 0) != 0) fail("expected n=<int>");
            try {
                n = std::stoi(tok.substr(2));
            } catch (...) {
                fail("bad n value");
            }
            g.k = k;
            g.n = n;
            have_header = true;
            continue;
        }
        std::vector<int> e;
        int v;
        while (ls >> v) e.push_back(v);
        if (!ls.eof()) fail("non-integer token in edge");
        if (e.empty()) continue;
        if (static_cast<int>(e.size()) != g.k)
            fail("edge has " + std::to_string(e.size()) + " vertices, expected " +
                 std::to_string(g.k));
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 1 || e[i] > g.n) fail("vertex out of range");
            if (i > 0 && e[i] <= e[i - 1]) fail("vertices not strictly increasing");
        }
        g.edges.push_back(std::move(e));
    }
    if (!have_header) {
        lineno = 0;
        fail("missing header");
    }
    g.canonicalize();
    return g;
}

KGraph parse_kgraph(const std::string& text) {
    std::istringstream in(text);
    return parse_kgraph(in);
}

KGraph load_kgraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_kgraph(in);
}

void save_kgraph(const KGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize(g);
}

void Graph2::canonicalize() {
    for (auto& [a, b] : edges) {
        if (a == b) throw std::invalid_argument("Graph2: loop edge");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::set<int> vs(vertices.begin(), vertices.end());
    for (const auto& [a, b] : edges) {
        vs.insert(a);
        vs.insert(b);
    }
    vertices.assign(vs.begin(), vs.end());
    for (int v : vertices)
        if (v < 1 || v > n) throw std::invalid_argument("Graph2: vertex out of range");
}

int Graph2::max_degree() const {
    std::map<int, int> deg;
    for (const auto& [a, b] : edges) {
        deg[a]++;
        deg[b]++;
    }
    int best = 0;
    for (const auto& [v, d] : deg) best = std::max(best, d);
    return best;
}

std::vector<std::vector<int>> Graph2::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

namespace {

// ESU enumeration (Wernicke): grow connected sets from each anchor vertex,
// extending only by exclusive neighbors larger than the anchor. Each
// connected induced subset of size t is produced exactly once.
void extend_connected(const std::vector<std::vector<int>>& adj, int anchor,
                      std::vector<int>& sub, std::set<int> ext,
                      std::vector<char>& in_closure, int t,
                      const std::function<void(const std::vector<int>&)>& cb) {
    if (static_cast<int>(sub.size()) == t) {
        std::vector<int> s = sub;
        std::sort(s.begin(), s.end());
        cb(s);
        return;
    }
    while (!ext.empty()) {
        int w = *ext.begin();
        ext.erase(ext.begin());
        std::set<int> next_ext = ext;
        std::vector<int> newly_marked;
        for (int u : adj[static_cast<std::size_t>(w)]) {
            if (u <= anchor) continue;
            if (in_closure[static_cast<std::size_t>(u)]) continue;
            next_ext.insert(u);
            in_closure[static_cast<std::size_t>(u)] = 1;
            newly_marked.push_back(u);
        }
        sub.push_back(w);
        extend_connected(adj, anchor, sub, std::move(next_ext), in_closure, t, cb);
        sub.pop_back();
        for (int u : newly_marked) in_closure[static_cast<std::size_t>(u)] = 0;
    }
}

}  // namespace

void enumerate_connected_subsets(const Graph2& F, int t,
                                 const std::function<void(const std::vector<int>&)>& cb) {
    if (t <= 0) return;
    if (t == 1) {
        for (int v : F.vertices) cb({v});
        return;
    }
    auto adj = F.adjacency();
    std::vector<char> in_closure(static_cast<std::size_t>(F.n) + 1, 0);
    for (int v : F.vertices) {
        std::vector<int> sub{v};
        std::set<int> ext;
        in_closure[static_cast<std::size_t>(v)] = 1;
        for (int u : adj[static_cast<std::size_t>(v)]) {
            if (u > v) {
                ext.insert(u);
                in_closure[static_cast<std::size_t>(u)] = 1;
            }
        }
        extend_connected(adj, v, sub, ext, in_closure, t, cb);
        std::fill(in_closure.begin(), in_closure.end(), 0);
    }
}

KGraph lift_connected(const Graph2& F, int k) {
    if (k < 3) throw std::invalid_argument("lift_connected: k must be >= 3");
    KGraph h(k, F.n);
    if (static_cast<int>(F.vertices.size()) < k) {
        h.canonicalize();
        return h;
    }
    std::set<std::vector<int>> out;
    enumerate_connected_subsets(F, k - 1, [&](const std::vector<int>& s) {
        for (int v : F.vertices) {
            if (std::binary_search(s.begin(), s.end(), v)) continue;
            std::vector<int> e = s;
            e.push_back(v);
            std::sort(e.begin(), e.end());
            out.insert(std::move(e));
        }
    });
    h.edges.assign(out.begin(), out.end());
    h.canonicalize();
    return h;
}

KGraph lift_family(const GraphFamily& fam, int k, int n) {
    KGraph h(k, n);
    std::set<std::vector<int>> out;
    for (const auto& f : fam.members) {
        if (f.n > n)
            throw std::invalid_argument("lift_family: member universe exceeds n");
        KGraph lifted = lift_connected(f, k);
        for (auto& e : lifted.edges) out.insert(e);
    }
    h.edges.assign(out.begin(), out.end());
    h.canonicalize();
    return h;
}

KGraph reduce(const KGraph& H, const std::vector<int>& U,
              const std::vector<std::vector<int>>& Ws) {
    int r = static_cast<int>(Ws.size());
    if (r < 0 || r > H.k - 2)
        throw std::invalid_argument("reduce: r out of range [0, k-2]");
    // disjointness
    std::set<int> seen;
    auto add_all = [&](const std::vector<int>& s) {
        for (int v : s) {
            if (v < 1 || v > H.n)
                throw std::invalid_argument("reduce: vertex out of range");
            if (!seen.insert(v).second)
                throw std::invalid_argument("reduce: subsets not pairwise disjoint");
        }
    };
    add_all(U);
    for (const auto& w : Ws) add_all(w);

    std::vector<int> u_sorted = U;
    std::sort(u_sorted.begin(), u_sorted.end());
    std::map<int, int> relabel;
    for (std::size_t i = 0; i < u_sorted.size(); ++i)
        relabel[u_sorted[i]] = static_cast<int>(i) + 1;

    std::vector<char> in_which(static_cast<std::size_t>(H.n) + 1, -1);
    // 0 = U, 1.. = W index + 1
    for (int v : U) in_which[static_cast<std::size_t>(v)] = 0;
    for (int i = 0; i < r; ++i)
        for (int v : Ws[static_cast<std::size_t>(i)])
            in_which[static_cast<std::size_t>(v)] = static_cast<char>(i + 1);

    KGraph out(H.k - r, static_cast<int>(U.size()));
    std::set<std::vector<int>> edge_set;
    for (const auto& e : H.edges) {
        std::vector<int> s;
        std::vector<char> hit(static_cast<std::size_t>(r) + 1, 0);
        bool ok = true;
        for (int v : e) {
            char c = in_which[static_cast<std::size_t>(v)];
            if (c < 0) {
                ok = false;
                break;
            }
            if (c == 0) {
                s.push_back(v);
            } else {
                if (hit[static_cast<std::size_t>(c)]) {
                    ok = false;  // two vertices from the same W_i
                    break;
                }
                hit[static_cast<std::size_t>(c)] = 1;
            }
        }
        if (!ok || static_cast<int>(s.size()) != H.k - r) continue;
        for (int i = 1; i <= r; ++i)
            if (!hit[static_cast<std::size_t>(i)]) ok = false;
        if (!ok) continue;
        for (int& v : s) v = relabel[v];
        std::sort(s.begin(), s.end());
        edge_set.insert(std::move(s));
    }
    out.edges.assign(edge_set.begin(), edge_set.end());
    out.canonicalize();
    return out;
}

KGraph graph_union(const KGraph& a, const KGraph& b) {
    if (a.k != b.k || a.n != b.n)
        throw std::invalid_argument("graph_union: mismatched k or n");
    KGraph out(a.k, a.n);
    out.edges = a.edges;
    out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
    out.canonicalize();
    return out;
}

KGraph complete_kgraph(int n, int k) {
    KGraph g(k, n);
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            g.edges.push_back(idx);
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

}  // namespace ramsey
