#include "dacs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dacs {

bool Graph::has_edge(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) return false;
    const auto& a = adjacency[i];
    return std::binary_search(a.begin(), a.end(), j);
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw std::invalid_argument("graph: n must be >= 1");
    for (auto& [i, j] : edges) {
        if (i > j) std::swap(i, j);
        if (i < 0 || j >= n || i == j)
            throw std::invalid_argument("graph: edge endpoints must satisfy 0 <= i < j < n");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("graph: duplicate edge");

    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    g.adjacency.assign(n, {});
    for (auto [i, j] : g.edges) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
    }
    for (auto& a : g.adjacency) std::sort(a.begin(), a.end());
    return g;
}

double geometric_radius(int n) { return std::sqrt(2.0 * std::log(static_cast<double>(n)) / n); }

Graph generate_geometric_graph(int n, double radius, Rng& rng, int max_retries) {
    if (n < 2) throw std::invalid_argument("geometric graph: n must be >= 2");
    if (radius <= 0.0) throw std::invalid_argument("geometric graph: radius must be > 0");

    const double r2 = radius * radius;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<std::array<double, 3>> pts(n);
        for (auto& p : pts) p = {rng.uniform01(), rng.uniform01(), rng.uniform01()};

        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double dx = pts[i][0] - pts[j][0];
                double dy = pts[i][1] - pts[j][1];
                double dz = pts[i][2] - pts[j][2];
                if (dx * dx + dy * dy + dz * dz <= r2) edges.emplace_back(i, j);
            }

        Graph g = make_graph(n, std::move(edges));
        if (is_connected(g)) {
            g.coords = std::move(pts);
            return g;
        }
    }
    throw std::runtime_error("geometric graph: retry budget exhausted (radius too small for n)");
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.adjacency[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == g.n;
}

int IncidenceData::dir(int i, int j) const {
    int k = edge_k_[static_cast<std::size_t>(i) * n + j];
    if (k < 0) throw std::invalid_argument("incidence: (i,j) is not an edge");
    return i < j ? k : m + k;
}

std::vector<double> IncidenceData::apply_P(const std::vector<double>& z) const {
    std::vector<double> out(z.size());
    for (int k = 0; k < m; ++k) {
        out[k] = z[m + k];
        out[m + k] = z[k];
    }
    return out;
}

NodeVector IncidenceData::Ct(const std::vector<double>& z) const {
    NodeVector out(n, 0.0);
    for (int d = 0; d < 2 * m; ++d) out[holder[d]] += weight[d] * z[d];
    return out;
}

std::vector<double> IncidenceData::Cx(const NodeVector& x) const {
    std::vector<double> out(2 * m);
    for (int d = 0; d < 2 * m; ++d) out[d] = weight[d] * x[holder[d]];
    return out;
}

IncidenceData incidence(const Graph& g) {
    if (!is_connected(g)) throw std::invalid_argument("incidence: graph must be connected");

    IncidenceData inc;
    inc.n = g.n;
    inc.m = g.m();
    inc.edges = g.edges;
    inc.degree.resize(g.n);
    for (int i = 0; i < g.n; ++i) inc.degree[i] = g.degree(i);

    inc.B = Matrix(inc.m, inc.n);
    inc.Bplus = Matrix(inc.m, inc.n);
    inc.Bminus = Matrix(inc.m, inc.n);
    inc.C = Matrix(2 * inc.m, inc.n);
    inc.holder.resize(2 * inc.m);
    inc.other.resize(2 * inc.m);
    inc.weight.resize(2 * inc.m);
    inc.held.assign(inc.n, {});
    inc.neighbors = g.adjacency;
    inc.edge_k_.assign(static_cast<std::size_t>(inc.n) * inc.n, -1);

    for (int k = 0; k < inc.m; ++k) {
        auto [i, j] = inc.edges[k];  // i < j
        inc.B(k, i) = 1.0;
        inc.B(k, j) = -1.0;
        inc.Bplus(k, i) = 1.0;
        inc.Bminus(k, j) = -1.0;
        inc.C(k, i) = 1.0;           // row k of Bplus
        inc.C(inc.m + k, j) = -1.0;  // row k of Bminus

        inc.holder[k] = i;
        inc.other[k] = j;
        inc.weight[k] = 1.0;  // B_{i|j}, i < j
        inc.holder[inc.m + k] = j;
        inc.other[inc.m + k] = i;
        inc.weight[inc.m + k] = -1.0;  // B_{j|i}

        inc.held[i].push_back(k);
        inc.held[j].push_back(inc.m + k);
        inc.edge_k_[static_cast<std::size_t>(i) * inc.n + j] = k;
        inc.edge_k_[static_cast<std::size_t>(j) * inc.n + i] = k;
    }
    return inc;
}

HonestPartition honest_partition(const Graph& g, std::vector<int> corrupt) {
    std::sort(corrupt.begin(), corrupt.end());
    corrupt.erase(std::unique(corrupt.begin(), corrupt.end()), corrupt.end());
    for (int c : corrupt)
        if (c < 0 || c >= g.n) throw std::invalid_argument("honest_partition: corrupt node out of range");

    HonestPartition p;
    p.corrupt = corrupt;
    p.is_corrupt.assign(g.n, 0);
    for (int c : corrupt) p.is_corrupt[c] = 1;
    for (int i = 0; i < g.n; ++i)
        if (!p.is_corrupt[i]) p.honest.push_back(i);

    for (auto e : g.edges) {
        if (!p.is_corrupt[e.first] && !p.is_corrupt[e.second])
            p.honest_edges.push_back(e);
        else
            p.corrupt_edges.push_back(e);
    }

    // components by traversal restricted to honest-honest edges
    std::vector<char> seen(g.n, 0);
    for (int start : p.honest) {
        if (seen[start]) continue;
        std::vector<int> comp, stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int v : g.adjacency[u])
                if (!p.is_corrupt[v] && !seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        p.components.push_back(std::move(comp));
    }
    return p;
}

std::vector<int> HonestPartition::honest_neighbors(const Graph& g, int i) const {
    std::vector<int> out;
    for (int v : g.adjacency[i])
        if (!is_corrupt[v]) out.push_back(v);
    return out;
}

std::vector<double> component_sums(const HonestPartition& p, const NodeVector& s) {
    std::vector<double> sums;
    sums.reserve(p.components.size());
    for (const auto& comp : p.components) {
        double acc = 0.0;
        for (int i : comp) acc += s[i];  // ascending node order
        sums.push_back(acc);
    }
    return sums;
}

void write_graph(std::ostream& os, const Graph& g) {
    os << g.n << ' ' << g.m() << '\n';
    for (auto [i, j] : g.edges) os << i << ' ' << j << '\n';
    if (!g.coords.empty()) {
        os.precision(17);
        for (int i = 0; i < g.n; ++i)
            os << i << ' ' << g.coords[i][0] << ' ' << g.coords[i][1] << ' ' << g.coords[i][2] << '\n';
    }
}

Graph read_graph(std::istream& is) {
    int n = 0, m = 0;
    if (!(is >> n >> m)) throw std::runtime_error("graph parse: bad header");
    std::vector<std::pair<int, int>> edges(m);
    for (auto& [i, j] : edges)
        if (!(is >> i >> j)) throw std::runtime_error("graph parse: bad edge line");
    Graph g = make_graph(n, std::move(edges));
    // optional coordinate lines
    int idx;
    if (is >> idx) {
        g.coords.assign(n, {});
        double x, y, z;
        if (!(is >> x >> y >> z)) throw std::runtime_error("graph parse: bad coordinate line");
        g.coords[idx] = {x, y, z};
        for (int r = 1; r < n; ++r) {
            if (!(is >> idx >> x >> y >> z)) throw std::runtime_error("graph parse: bad coordinate line");
            g.coords[idx] = {x, y, z};
        }
    }
    return g;
}

}  // namespace dacs
