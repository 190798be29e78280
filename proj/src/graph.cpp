#include "diffenc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace diffenc {

long Graph::edge_count() const {
    long twice = 0;
    for (const auto& nb : adjacency) twice += static_cast<long>(nb.size());
    return twice / 2;
}

bool Graph::has_edge(int u, int v) const {
    const auto& nb = adjacency[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges,
                 EdgeListStats* stats) {
    if (n <= 0) throw std::invalid_argument("make_graph: empty graph");
    EdgeListStats local;
    std::set<std::pair<int, int>> seen;
    Graph g;
    g.n = n;
    g.adjacency.resize(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::out_of_range("make_graph: node id out of range");
        if (u == v) {
            ++local.loops_dropped;
            continue;
        }
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) {
            ++local.duplicates_dropped;
            continue;
        }
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
    }
    for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
    if (stats) *stats = local;
    return g;
}

Graph load_edge_list(const std::string& path, EdgeListStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int max_id = -1;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        long u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v) || u < 0 || v < 0) {
            throw std::runtime_error("load_edge_list: parse error at " + path +
                                     ":" + std::to_string(line_no));
        }
        std::string extra;
        if (ls >> extra) {
            throw std::runtime_error("load_edge_list: trailing tokens at " +
                                     path + ":" + std::to_string(line_no));
        }
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
    }
    if (max_id < 0) throw std::runtime_error("load_edge_list: empty graph in " + path);
    return make_graph(max_id + 1, edges, stats);
}

Graph generate_random_regular(int n, int r, std::uint64_t seed,
                              int restart_budget) {
    if (r < 3) throw std::invalid_argument("generate_random_regular: r must be >= 3");
    if (r >= n) throw std::invalid_argument("generate_random_regular: r must be < n");
    if ((static_cast<long>(n) * r) % 2 != 0)
        throw std::invalid_argument("generate_random_regular: n*r must be even");

    std::mt19937_64 rng(seed);
    const int half_edges = n * r;
    std::vector<int> stubs(half_edges);
    for (int i = 0; i < half_edges; ++i) stubs[i] = i / r;

    for (int attempt = 0; attempt < restart_budget; ++attempt) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        // Pair consecutive stubs; reject the whole matching on any loop or
        // duplicate edge so the accepted graph is uniform over simple ones.
        bool simple = true;
        std::set<std::pair<int, int>> seen;
        for (int i = 0; i < half_edges && simple; i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || !seen.insert(std::minmax(u, v)).second) simple = false;
        }
        if (!simple) continue;
        Graph g;
        g.n = n;
        g.adjacency.resize(n);
        for (int i = 0; i < half_edges; i += 2) {
            g.adjacency[stubs[i]].push_back(stubs[i + 1]);
            g.adjacency[stubs[i + 1]].push_back(stubs[i]);
        }
        for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
        g.degree_regular = r;
        return g;
    }
    throw std::runtime_error("generate_random_regular: restart budget exhausted");
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    if (source < 0 || source >= g.n)
        throw std::out_of_range("bfs_distances: source out of range");
    std::vector<int> dist(g.n, kUnreachable);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.adjacency[u]) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

DistanceMatrix node_anchor_distances(const Graph& g,
                                     const std::vector<int>& anchors) {
    if (anchors.empty())
        throw std::invalid_argument("node_anchor_distances: empty anchor list");
    DistanceMatrix d;
    d.hops.resize(g.n, static_cast<int>(anchors.size()));
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        auto col = bfs_distances(g, anchors[i]);
        for (int v = 0; v < g.n; ++v) d.hops(v, static_cast<int>(i)) = col[v];
    }
    return d;
}

std::vector<int> ball(const Graph& g, int u, int radius) {
    if (radius < 0) throw std::invalid_argument("ball: negative radius");
    auto dist = bfs_distances(g, u);
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (dist[v] != kUnreachable && dist[v] <= radius) out.push_back(v);
    return out;
}

bool is_connected(const Graph& g) {
    if (g.n < 1) throw std::invalid_argument("is_connected: empty graph");
    auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(),
                        [](int d) { return d == kUnreachable; });
}

}  // namespace diffenc
