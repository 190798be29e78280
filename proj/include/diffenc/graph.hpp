#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace diffenc {

/// Undirected simple graph in compressed adjacency form.
/// Nodes are dense 0-based ids; neighbor lists are kept sorted.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adjacency;
    std::optional<int> degree_regular;

    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
    long edge_count() const;
    bool has_edge(int u, int v) const;
};

/// Sentinel hop count for unreachable pairs.
inline constexpr int kUnreachable = -1;

/// Node-by-anchor hop-count matrix; kUnreachable marks disconnected pairs.
struct DistanceMatrix {
    Eigen::MatrixXi hops;  // n x anchor_count

    int rows() const { return static_cast<int>(hops.rows()); }
    int cols() const { return static_cast<int>(hops.cols()); }
};

struct EdgeListStats {
    long duplicates_dropped = 0;
    long loops_dropped = 0;
};

/// Builds a graph from an explicit edge list; duplicates and loops are dropped.
Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges,
                 EdgeListStats* stats = nullptr);

/// Reads a whitespace-delimited "u v" edge list; '#' starts a comment line.
/// Node count is max id + 1. Throws on parse errors (with line number) and
/// on empty graphs.
Graph load_edge_list(const std::string& path, EdgeListStats* stats = nullptr);

/// Uniform random simple r-regular graph via the configuration model with
/// full restart on any self-loop or multi-edge. Deterministic per seed.
Graph generate_random_regular(int n, int r, std::uint64_t seed,
                              int restart_budget = 200000);

/// Single-source BFS hop counts; unreachable nodes carry kUnreachable.
std::vector<int> bfs_distances(const Graph& g, int source);

/// One BFS per anchor, assembled column-wise.
DistanceMatrix node_anchor_distances(const Graph& g,
                                     const std::vector<int>& anchors);

/// Sorted ids of {v : SPD(u,v) <= R}.
std::vector<int> ball(const Graph& g, int u, int radius);

bool is_connected(const Graph& g);

}  // namespace diffenc
