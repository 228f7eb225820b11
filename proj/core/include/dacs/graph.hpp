#pragma once

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include "dacs/matrix.hpp"
#include "dacs/rng.hpp"

namespace dacs {

using NodeVector = std::vector<double>;

/// Undirected connected-or-not network graph. Edge list is kept sorted
/// lexicographically with i < j per pair; the position of an edge in the
/// list is its edge index k, which fixes incidence-matrix row order and
/// makes every downstream artifact byte-reproducible.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;          // sorted, i < j
    std::vector<std::vector<int>> adjacency;         // sorted neighbor lists
    std::vector<std::array<double, 3>> coords;       // empty unless geometric

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int i) const { return static_cast<int>(adjacency[i].size()); }
    bool has_edge(int i, int j) const;
};

/// Builds a Graph from an edge list, validating 0 <= i < j < n and
/// rejecting duplicates. Throws std::invalid_argument on violation.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

/// Random geometric graph: n points uniform in the unit cube [0,1]^3,
/// edge iff Euclidean distance <= radius. Placements are redrawn until the
/// graph is connected (at most max_retries); throws std::runtime_error when
/// the retry budget is exhausted, which signals the radius is too small.
Graph generate_geometric_graph(int n, double radius, Rng& rng, int max_retries = 1000);

/// Radius sqrt(2 log(n) / n) that makes the geometric graph connected with
/// high probability.
double geometric_radius(int n);

bool is_connected(const Graph& g);

/// Incidence structure of a connected graph.
///
/// Directed-edge indexing: for undirected edge k = (i, j) with i < j, the
/// directed entry d = k is the variable held at i toward j ("i|j") and
/// d = m + k is the one held at j toward i ("j|i"). An EdgeField is a flat
/// vector of 2m reals in this order; the permutation P swaps the two halves.
struct IncidenceData {
    int n = 0;
    int m = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> degree;

    Matrix B;       // m x n signed incidence, row k: +1 at i, -1 at j (i<j)
    Matrix Bplus;   // positive part
    Matrix Bminus;  // negative part
    Matrix C;       // 2m x n, stacked [Bplus; Bminus]

    std::vector<int> holder;     // 2m: node holding directed entry d
    std::vector<int> other;      // 2m: opposite endpoint
    std::vector<double> weight;  // 2m: B_{holder|other}
    std::vector<std::vector<int>> held;       // node -> directed indices it holds
    std::vector<std::vector<int>> neighbors;  // node -> sorted neighbor ids

    /// Directed index of the entry held at i toward neighbor j.
    int dir(int i, int j) const;
    /// Signed weight B_{i|j}: +1 if i < j else -1.
    double edge_weight(int i, int j) const { return i < j ? 1.0 : -1.0; }
    /// Index of the opposite direction of d.
    int swapped(int d) const { return d < m ? d + m : d - m; }

    std::vector<double> apply_P(const std::vector<double>& z) const;
    /// C^T z (fast indexed path; the dense member C is the oracle route).
    NodeVector Ct(const std::vector<double>& z) const;
    /// C x as a 2m-vector.
    std::vector<double> Cx(const NodeVector& x) const;

  private:
    std::vector<int> edge_k_;  // n*n lookup, -1 where absent
    friend IncidenceData incidence(const Graph& g);
};

/// Builds the incidence matrices; requires a connected graph.
IncidenceData incidence(const Graph& g);

/// Partition of the honest subgraph into connected components after
/// removing a corrupt node set.
struct HonestPartition {
    std::vector<int> corrupt;                       // sorted, deduplicated
    std::vector<int> honest;                        // sorted complement
    std::vector<std::pair<int, int>> honest_edges;  // both endpoints honest
    std::vector<std::pair<int, int>> corrupt_edges; // >= 1 corrupt endpoint
    std::vector<std::vector<int>> components;       // sorted node sets
    std::vector<char> is_corrupt;                   // size n

    int k_h() const { return static_cast<int>(components.size()); }
    std::vector<int> honest_neighbors(const Graph& g, int i) const;
};

/// Components found by traversal restricted to honest-honest edges.
/// Result is invariant under permutation of the corrupt input order.
HonestPartition honest_partition(const Graph& g, std::vector<int> corrupt);

/// Per-component sums over the honest components, in component order.
std::vector<double> component_sums(const HonestPartition& p, const NodeVector& s);

/// Line-oriented text format: header "n m", one "i j" line per edge,
/// then optional "i x y z" coordinate lines.
void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);

}  // namespace dacs
