#include "diffenc/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace diffenc {

std::vector<LinkSample> collect_link_pairs(const Graph& g,
                                           const DiffusionEmbedding& emb,
                                           int radius) {
    if (radius < 1) throw std::invalid_argument("collect_link_pairs: radius < 1");
    if (!is_connected(g))
        throw std::invalid_argument("collect_link_pairs: graph not connected");
    std::vector<LinkSample> samples;
    for (int u = 0; u < g.n; ++u) {
        auto dist = bfs_distances(g, u);
        for (int v = u + 1; v < g.n; ++v) {
            if (dist[v] >= 1 && dist[v] <= radius)
                samples.push_back({dist[v], truncated_distance(emb, u, v)});
        }
    }
    if (samples.empty())
        throw std::runtime_error("collect_link_pairs: no pairs within radius");
    return samples;
}

std::vector<LinkSample> collect_link_pairs(const Graph& g,
                                           const DiffusionEmbedding& emb,
                                           int radius,
                                           const std::vector<int>& anchors) {
    if (radius < 1) throw std::invalid_argument("collect_link_pairs: radius < 1");
    std::vector<LinkSample> samples;
    for (int a : anchors) {
        auto dist = bfs_distances(g, a);
        for (int v = 0; v < g.n; ++v) {
            if (dist[v] >= 1 && dist[v] <= radius)
                samples.push_back({dist[v], truncated_distance(emb, a, v)});
        }
    }
    if (samples.empty())
        throw std::runtime_error("collect_link_pairs: no pairs within radius");
    return samples;
}

MonotoneLink fit_isotonic(const std::vector<LinkSample>& samples) {
    if (samples.empty())
        throw std::invalid_argument("fit_isotonic: no samples");

    // Pre-average per distinct hop value with multiplicity weights.
    std::map<int, std::pair<double, double>> groups;  // hop -> (sum, weight)
    for (const auto& s : samples) {
        auto& [sum, w] = groups[s.hop];
        sum += s.target;
        w += 1.0;
    }

    std::vector<int> hops;
    std::vector<double> means, weights;
    for (const auto& [hop, sw] : groups) {
        hops.push_back(hop);
        means.push_back(sw.first / sw.second);
        weights.push_back(sw.second);
    }

    // PAVA: merge adjacent blocks while a descent remains.
    struct Block {
        double value, weight;
        int last;  // index of last level in the block
    };
    std::vector<Block> stack;
    for (std::size_t i = 0; i < means.size(); ++i) {
        Block b{means[i], weights[i], static_cast<int>(i)};
        while (!stack.empty() && stack.back().value >= b.value) {
            const Block& prev = stack.back();
            b.value = (prev.value * prev.weight + b.value * b.weight) /
                      (prev.weight + b.weight);
            b.weight += prev.weight;
            stack.pop_back();
        }
        stack.push_back(b);
    }

    MonotoneLink link;
    link.breakpoints = hops;
    link.values.resize(hops.size());
    int start = 0;
    for (const Block& b : stack) {
        for (int i = start; i <= b.last; ++i) link.values[i] = b.value;
        start = b.last + 1;
    }
    link.radius = hops.back();
    return link;
}

double evaluate_link(const MonotoneLink& link, double d) {
    if (d < 0) throw std::invalid_argument("evaluate_link: negative distance");
    const auto& bp = link.breakpoints;
    if (d <= bp.front()) return link.values.front();
    if (d >= bp.back()) return link.values.back();
    auto it = std::upper_bound(bp.begin(), bp.end(), d);
    std::size_t hi = static_cast<std::size_t>(it - bp.begin());
    std::size_t lo = hi - 1;
    if (d == bp[lo]) return link.values[lo];
    double frac = (d - bp[lo]) / static_cast<double>(bp[hi] - bp[lo]);
    return link.values[lo] + frac * (link.values[hi] - link.values[lo]);
}

MonotoneLink strictified(const MonotoneLink& link) {
    MonotoneLink out = link;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += 1e-9 * (out.breakpoints[i] - out.breakpoints.front());
    return out;
}

LinkageReport linkage_error(const MonotoneLink& link,
                            const std::vector<LinkSample>& samples) {
    if (samples.empty())
        throw std::invalid_argument("linkage_error: no samples");
    LinkageReport rep;
    rep.radius = link.radius;
    rep.pair_count = static_cast<long>(samples.size());
    double sumsq = 0.0;
    for (const auto& s : samples) {
        double r = std::abs(s.target - evaluate_link(link, s.hop));
        rep.delta_hat = std::max(rep.delta_hat, r);
        sumsq += r * r;
    }
    rep.residual_rms = std::sqrt(sumsq / static_cast<double>(samples.size()));
    return rep;
}

double radial_transform(double d, RadialKind kind, double median_scale) {
    if (d < 0) throw std::invalid_argument("radial_transform: negative distance");
    if (median_scale <= 0)
        throw std::invalid_argument("radial_transform: nonpositive scale");
    double x = d / median_scale;
    switch (kind) {
        case RadialKind::identity: return x;
        case RadialKind::exp_neg: return std::exp(-x);
        case RadialKind::log1p: return std::log1p(x);
    }
    throw std::logic_error("radial_transform: unknown kind");
}

}  // namespace diffenc
