#pragma once

#include <Eigen/Dense>

#include "diffenc/graph.hpp"

namespace diffenc {

enum class LaplacianMode {
    regular,  // L = I - A/r, requires a uniform degree
    general,  // L = I - D^{-1/2} A D^{-1/2}
};

/// Dense symmetric Laplacian in the requested normalization.
Eigen::MatrixXd laplacian(const Graph& g, LaplacianMode mode);

/// Ascending eigenvalues with orthonormal eigenvector columns.
struct EigenSystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    LaplacianMode mode = LaplacianMode::regular;

    int n() const { return static_cast<int>(values.size()); }
};

/// Full dense symmetric eigendecomposition. Negative round-off eigenvalues
/// are clamped to zero.
EigenSystem eigendecompose(const Eigen::MatrixXd& L,
                           LaplacianMode mode = LaplacianMode::regular);

EigenSystem eigendecompose(const Graph& g, LaplacianMode mode);

/// Heat kernel K_t = sum_j exp(-t*lambda_j) phi_j phi_j^T.
Eigen::MatrixXd heat_kernel(const EigenSystem& eig, double t);

/// Single heat-kernel entry k_t(u,v) from the spectral sum.
double heat_kernel_entry(const EigenSystem& eig, double t, int u, int v);

enum class DistanceMethod { spectral_sum, kernel_identity };

/// Full diffusion distance d_t(u,v) over the nontrivial modes; both methods
/// agree up to round-off. The trivial eigenvector is excluded so that
/// d_t^2 = (d_t^(m))^2 + tail^2 holds exactly in either Laplacian mode.
double diffusion_distance(const EigenSystem& eig, double t, int u, int v,
                          DistanceMethod method = DistanceMethod::spectral_sum);

/// n x m matrix of truncated diffusion coordinates at a fixed time.
/// Column j holds exp(-t*lambda_{j+2}) * phi_{j+2} (0-based j, trivial
/// eigenvector skipped).
struct DiffusionEmbedding {
    double t = 0.0;
    int m = 0;
    Eigen::MatrixXd coords;

    int n() const { return static_cast<int>(coords.rows()); }
};

/// Truncated diffusion-map embedding. Warns on stderr when the truncation
/// boundary splits a numerically tied eigenspace.
DiffusionEmbedding truncated_embedding(const EigenSystem& eig, double t, int m);

/// Euclidean distance between embedding rows, d_t^(m)(u,v).
double truncated_distance(const DiffusionEmbedding& emb, int u, int v);

/// Spectral tail sqrt(sum_{j>m+1} exp(-2t*lambda_j) (phi_j(u)-phi_j(v))^2),
/// so that d_t^2 = (d_t^(m))^2 + tail^2 exactly.
double tail(const EigenSystem& eig, double t, int m, int u, int v);

}  // namespace diffenc
