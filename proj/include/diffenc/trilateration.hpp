#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "diffenc/graph.hpp"
#include "diffenc/linkage.hpp"
#include "diffenc/spectral.hpp"

namespace diffenc {

enum class AnchorStrategy { uniform, fps, explicit_list };

/// m+1 anchor nodes with their embedding positions (optionally jittered).
struct AnchorSet {
    std::vector<int> indices;
    Eigen::MatrixXd positions;  // (m+1) x m
    AnchorStrategy strategy = AnchorStrategy::explicit_list;
    double jitter_eps = 0.0;
};

/// Uniform sampling is without replacement; fps greedily maximizes the
/// minimum hop distance to the chosen set. Jitter adds eps-scaled standard
/// Gaussian noise to the positions.
AnchorSet select_anchors(const Graph& g, const DiffusionEmbedding& emb,
                         int count, AnchorStrategy strategy,
                         std::uint64_t seed, double jitter_eps = 0.0,
                         int fps_start = -1);

AnchorSet make_anchor_set(const DiffusionEmbedding& emb,
                          std::vector<int> indices);

/// True when the anchor-difference matrix M has smallest/largest singular
/// value ratio above 1e-12 (affine independence of the rows).
bool generic_positions(const Eigen::MatrixXd& positions);

struct SingularAnchorsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Factorized linear system A = 2 M^T of the anchor geometry.
struct TrilaterationSystem {
    Eigen::MatrixXd A;
    Eigen::PartialPivLU<Eigen::MatrixXd> factorization;
    double cond = 0.0;           // spectral condition number of A
    double inv_op_norm = 0.0;    // ||A^{-1}||_op
    bool det_M_nonzero = false;
};

/// Throws SingularAnchorsError when the anchors are degenerate at the
/// 1e-12 relative singular-value threshold.
TrilaterationSystem build_system(const AnchorSet& anchors);

/// Right-hand side b(r) with entries
/// ||p_i||^2 - ||p_{m+1}||^2 + r_{m+1}^2 - r_i^2.
Eigen::VectorXd rhs(const AnchorSet& anchors, const Eigen::VectorXd& radii);

/// Solves A z = b(radii) through the stored factorization.
Eigen::VectorXd reconstruct_from_radii(const TrilaterationSystem& system,
                                       const AnchorSet& anchors,
                                       const Eigen::VectorXd& radii);

/// T(v): radii are the link applied to the node's hop distances to anchors.
Eigen::VectorXd reconstruct(const TrilaterationSystem& system,
                            const AnchorSet& anchors, const MonotoneLink& link,
                            const Eigen::VectorXi& spd_row);

struct FrobeniusGap {
    double raw = 0.0;
    double normalized = 0.0;  // raw / sqrt(n*(m+1))
};

/// || D_diff - psi(D_spd) ||_F over node-anchor matrices.
FrobeniusGap frobenius_gap(const Eigen::MatrixXd& d_diff,
                           const DistanceMatrix& d_spd,
                           const MonotoneLink& link);

struct PointwiseCheck {
    std::vector<double> error;      // per node ||Phi(v) - T(v)||
    std::vector<double> bound_rhs;  // ||A^{-1}|| sqrt(m) (4 rho delta + 2 delta^2)
    std::vector<bool> in_radius;    // all anchor hops <= R
    double rho = 0.0;
    int violations = 0;
};

/// Evaluates the reconstruction error bound node by node. Requires delta to
/// dominate the measured node-anchor link residuals.
PointwiseCheck check_pointwise_bound(const TrilaterationSystem& system,
                                     const AnchorSet& anchors,
                                     const MonotoneLink& link,
                                     const DiffusionEmbedding& emb,
                                     const DistanceMatrix& spd, double delta,
                                     int radius);

/// Fraction of i.i.d. uniform anchor draws (with replacement) whose
/// difference matrix is numerically singular.
double degeneracy_probe(const DiffusionEmbedding& emb, int trials,
                        std::uint64_t seed);

}  // namespace diffenc
