#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ramsey {

// k-uniform hypergraph on vertex set [1, n]. Edges are stored as sorted
// k-tuples, the edge list is kept sorted lexicographically and duplicate
// free, so equal graphs compare equal.
struct KGraph {
    int k = 0;
    int n = 0;
    std::vector<std::vector<int>> edges;

    KGraph() = default;
    KGraph(int k_, int n_) : k(k_), n(n_) {}

    // Sorts vertices within edges, sorts and deduplicates the edge list,
    // and validates ranges/arities. Throws std::invalid_argument on bad input.
    void canonicalize();

    bool has_edge(std::vector<int> e) const;
    int max_degree() const;
    std::vector<int> degrees() const;  // index v-1

    bool operator==(const KGraph&) const = default;
};

// Text format: header "k=<int> n=<int>", then one edge per line as k
// strictly increasing space-separated vertex ids. Blank lines and lines
// starting with '#' are ignored.
std::string serialize(const KGraph& g);
KGraph parse_kgraph(std::istream& in);
KGraph parse_kgraph(const std::string& text);
KGraph load_kgraph(const std::string& path);
void save_kgraph(const KGraph& g, const std::string& path);

// 2-graph living inside a universe [1, n]; its vertex set may be a
// proper subset of the universe.
struct Graph2 {
    int n = 0;                  // universe size
    std::vector<int> vertices;  // sorted, subset of [1, n]
    std::vector<std::pair<int, int>> edges;  // each (a, b) with a < b

    void canonicalize();
    int max_degree() const;
    // adjacency over [1, n]; empty rows for non-vertices
    std::vector<std::vector<int>> adjacency() const;
};

struct GraphFamily {
    std::vector<Graph2> members;
};

// Enumerates every subset S of F's vertex set with |S| = t whose induced
// subgraph F[S] is connected; calls cb(S) with S sorted.
void enumerate_connected_subsets(const Graph2& F, int t,
                                 const std::function<void(const std::vector<int>&)>& cb);

// H^(k)(F): a k-set is an edge iff some (k-1)-subset of it induces a
// connected subgraph of F. Result has n = F.n.
KGraph lift_connected(const Graph2& F, int k);

// Union of the lifts of all members, on vertex set [1, n].
KGraph lift_family(const GraphFamily& fam, int k, int n);

// H(U; W_1, ..., W_r): (k-r)-graph on U (relabeled to [1, |U|] following
// U's sorted order); S is an edge iff some transversal (w_1, ..., w_r)
// in W_1 x ... x W_r completes it to an edge of H.
KGraph reduce(const KGraph& H, const std::vector<int>& U,
              const std::vector<std::vector<int>>& Ws);

KGraph graph_union(const KGraph& a, const KGraph& b);

KGraph complete_kgraph(int n, int k);

long long binomial(long long n, long long k);

}  // namespace ramsey
