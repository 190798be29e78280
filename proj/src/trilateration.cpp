#include "diffenc/trilateration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace diffenc {

namespace {

Eigen::MatrixXd difference_matrix(const Eigen::MatrixXd& positions) {
    const int m = static_cast<int>(positions.cols());
    Eigen::MatrixXd M(m, m);
    for (int i = 0; i < m; ++i)
        M.col(i) = (positions.row(i) - positions.row(m)).transpose();
    return M;
}

}  // namespace

AnchorSet select_anchors(const Graph& g, const DiffusionEmbedding& emb,
                         int count, AnchorStrategy strategy,
                         std::uint64_t seed, double jitter_eps,
                         int fps_start) {
    if (count < 1 || count > g.n)
        throw std::invalid_argument("select_anchors: count out of range");
    std::mt19937_64 rng(seed);
    std::vector<int> picked;

    if (strategy == AnchorStrategy::uniform) {
        std::vector<int> ids(g.n);
        std::iota(ids.begin(), ids.end(), 0);
        std::shuffle(ids.begin(), ids.end(), rng);
        picked.assign(ids.begin(), ids.begin() + count);
    } else if (strategy == AnchorStrategy::fps) {
        if (!is_connected(g))
            throw std::invalid_argument("select_anchors: fps needs a connected graph");
        int start = fps_start;
        if (start < 0) {
            // Double-BFS eccentricity heuristic for a deterministic start.
            auto d0 = bfs_distances(g, 0);
            int far = static_cast<int>(std::max_element(d0.begin(), d0.end()) - d0.begin());
            auto d1 = bfs_distances(g, far);
            start = static_cast<int>(std::max_element(d1.begin(), d1.end()) - d1.begin());
        }
        picked.push_back(start);
        std::vector<int> min_dist = bfs_distances(g, start);
        while (static_cast<int>(picked.size()) < count) {
            int next = static_cast<int>(
                std::max_element(min_dist.begin(), min_dist.end()) - min_dist.begin());
            picked.push_back(next);
            auto d = bfs_distances(g, next);
            for (int v = 0; v < g.n; ++v) min_dist[v] = std::min(min_dist[v], d[v]);
        }
    } else {
        throw std::invalid_argument("select_anchors: explicit strategy needs make_anchor_set");
    }

    AnchorSet out;
    out.indices = std::move(picked);
    out.strategy = strategy;
    out.jitter_eps = jitter_eps;
    out.positions.resize(count, emb.m);
    for (int i = 0; i < count; ++i)
        out.positions.row(i) = emb.coords.row(out.indices[i]);
    if (jitter_eps > 0.0) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int i = 0; i < count; ++i)
            for (int j = 0; j < emb.m; ++j)
                out.positions(i, j) += jitter_eps * gauss(rng);
    }
    return out;
}

AnchorSet make_anchor_set(const DiffusionEmbedding& emb,
                          std::vector<int> indices) {
    AnchorSet out;
    out.positions.resize(static_cast<int>(indices.size()), emb.m);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0 || indices[i] >= emb.n())
            throw std::out_of_range("make_anchor_set: anchor id out of range");
        out.positions.row(static_cast<int>(i)) = emb.coords.row(indices[i]);
    }
    out.indices = std::move(indices);
    out.strategy = AnchorStrategy::explicit_list;
    return out;
}

bool generic_positions(const Eigen::MatrixXd& positions) {
    Eigen::MatrixXd M = difference_matrix(positions);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    return smax > 0.0 && smin > 1e-12 * smax;
}

TrilaterationSystem build_system(const AnchorSet& anchors) {
    const int m = static_cast<int>(anchors.positions.cols());
    if (anchors.positions.rows() != m + 1)
        throw std::invalid_argument("build_system: need m+1 anchors of dimension m");
    TrilaterationSystem sys;
    sys.A = 2.0 * difference_matrix(anchors.positions).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.A);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(m - 1);
    sys.det_M_nonzero = smax > 0.0 && smin > 1e-12 * smax;
    if (!sys.det_M_nonzero)
        throw SingularAnchorsError("build_system: degenerate anchor positions");
    sys.cond = smax / smin;
    sys.inv_op_norm = 1.0 / smin;
    sys.factorization.compute(sys.A);
    return sys;
}

Eigen::VectorXd rhs(const AnchorSet& anchors, const Eigen::VectorXd& radii) {
    const int m = static_cast<int>(anchors.positions.cols());
    if (radii.size() != m + 1)
        throw std::invalid_argument("rhs: need m+1 radii");
    Eigen::VectorXd b(m);
    const double last_norm2 = anchors.positions.row(m).squaredNorm();
    const double last_r2 = radii(m) * radii(m);
    for (int i = 0; i < m; ++i) {
        b(i) = anchors.positions.row(i).squaredNorm() - last_norm2 + last_r2 -
               radii(i) * radii(i);
    }
    return b;
}

Eigen::VectorXd reconstruct_from_radii(const TrilaterationSystem& system,
                                       const AnchorSet& anchors,
                                       const Eigen::VectorXd& radii) {
    if (!system.det_M_nonzero)
        throw SingularAnchorsError("reconstruct: singular system");
    return system.factorization.solve(rhs(anchors, radii));
}

Eigen::VectorXd reconstruct(const TrilaterationSystem& system,
                            const AnchorSet& anchors, const MonotoneLink& link,
                            const Eigen::VectorXi& spd_row) {
    Eigen::VectorXd radii(spd_row.size());
    for (int i = 0; i < spd_row.size(); ++i) {
        if (spd_row(i) == kUnreachable)
            throw std::invalid_argument("reconstruct: unreachable anchor");
        radii(i) = evaluate_link(link, spd_row(i));
    }
    return reconstruct_from_radii(system, anchors, radii);
}

FrobeniusGap frobenius_gap(const Eigen::MatrixXd& d_diff,
                           const DistanceMatrix& d_spd,
                           const MonotoneLink& link) {
    if (d_diff.rows() != d_spd.hops.rows() || d_diff.cols() != d_spd.hops.cols())
        throw std::invalid_argument("frobenius_gap: shape mismatch");
    double sumsq = 0.0;
    for (int v = 0; v < d_spd.rows(); ++v) {
        for (int i = 0; i < d_spd.cols(); ++i) {
            double diff = d_diff(v, i) - evaluate_link(link, d_spd.hops(v, i));
            sumsq += diff * diff;
        }
    }
    FrobeniusGap gap;
    gap.raw = std::sqrt(sumsq);
    gap.normalized = gap.raw / std::sqrt(static_cast<double>(d_spd.rows()) *
                                         d_spd.cols());
    return gap;
}

PointwiseCheck check_pointwise_bound(const TrilaterationSystem& system,
                                     const AnchorSet& anchors,
                                     const MonotoneLink& link,
                                     const DiffusionEmbedding& emb,
                                     const DistanceMatrix& spd, double delta,
                                     int radius) {
    const int n = spd.rows();
    const int k = spd.cols();
    const int m = emb.m;

    double max_residual = 0.0;
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < k; ++i) {
            double d = truncated_distance(emb, v, anchors.indices[i]);
            max_residual = std::max(
                max_residual, std::abs(d - evaluate_link(link, spd.hops(v, i))));
        }
    }
    if (delta < max_residual)
        throw std::invalid_argument(
            "check_pointwise_bound: delta below measured node-anchor residual");

    PointwiseCheck check;
    check.rho = evaluate_link(link, radius) + delta;  // psi nondecreasing
    const double bound = system.inv_op_norm * std::sqrt(static_cast<double>(m)) *
                         (4.0 * check.rho * delta + 2.0 * delta * delta);
    check.error.resize(n);
    check.bound_rhs.assign(n, bound);
    check.in_radius.resize(n);
    for (int v = 0; v < n; ++v) {
        Eigen::VectorXd t = reconstruct(system, anchors, link,
                                        spd.hops.row(v).transpose());
        check.error[v] = (emb.coords.row(v).transpose() - t).norm();
        bool in_r = true;
        for (int i = 0; i < k; ++i)
            if (spd.hops(v, i) > radius) in_r = false;
        check.in_radius[v] = in_r;
        if (check.error[v] > bound * (1.0 + 1e-9) + 1e-12) ++check.violations;
    }
    return check;
}

double degeneracy_probe(const DiffusionEmbedding& emb, int trials,
                        std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("degeneracy_probe: trials < 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, emb.n() - 1);
    const int m = emb.m;
    int degenerate = 0;
    Eigen::MatrixXd positions(m + 1, m);
    for (int t = 0; t < trials; ++t) {
        for (int i = 0; i <= m; ++i) positions.row(i) = emb.coords.row(pick(rng));
        if (!generic_positions(positions)) ++degenerate;
    }
    return static_cast<double>(degenerate) / trials;
}

}  // namespace diffenc
