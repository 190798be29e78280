#pragma once

#include <vector>

#include "diffenc/graph.hpp"
#include "diffenc/spectral.hpp"

namespace diffenc {

/// One (hop distance, diffusion distance) observation.
struct LinkSample {
    int hop = 0;
    double target = 0.0;
};

/// All unordered pairs with 1 <= SPD(u,v) <= R, paired with the embedding
/// row distance. Requires a connected graph.
std::vector<LinkSample> collect_link_pairs(const Graph& g,
                                           const DiffusionEmbedding& emb,
                                           int radius);

/// Node-anchor variant: one sample per (node, anchor) pair within radius,
/// hop-0 self pairs excluded.
std::vector<LinkSample> collect_link_pairs(const Graph& g,
                                           const DiffusionEmbedding& emb,
                                           int radius,
                                           const std::vector<int>& anchors);

/// Nondecreasing step function fitted on distinct hop values. Evaluation
/// interpolates linearly between breakpoints and clamps outside the range.
struct MonotoneLink {
    std::vector<int> breakpoints;  // ascending, distinct
    std::vector<double> values;    // nondecreasing
    int radius = 0;
};

/// Weighted L2 isotonic regression by pool-adjacent-violators; samples
/// sharing a hop value are pre-averaged with multiplicity weights.
MonotoneLink fit_isotonic(const std::vector<LinkSample>& samples);

double evaluate_link(const MonotoneLink& link, double d);

/// Adds a 1e-9 * (d - d_0) tie-break slope so flat PAVA segments become
/// strictly increasing.
MonotoneLink strictified(const MonotoneLink& link);

struct LinkageReport {
    double delta_hat = 0.0;     // max |target - psi(hop)|
    double residual_rms = 0.0;
    long pair_count = 0;
    int radius = 0;
};

LinkageReport linkage_error(const MonotoneLink& link,
                            const std::vector<LinkSample>& samples);

enum class RadialKind { identity, exp_neg, log1p };

/// Rescales d by median_scale, then applies the chosen radial map.
double radial_transform(double d, RadialKind kind, double median_scale);

}  // namespace diffenc
