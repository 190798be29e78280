#pragma once

#include <vector>

#include <Eigen/Dense>

#include "diffenc/graph.hpp"
#include "diffenc/linkage.hpp"
#include "diffenc/spectral.hpp"

namespace diffenc {

enum class CrossMode { exact_columns, distance_driven };

struct NystromConfig {
    int k = 32;               // anchor count
    double t = 1.0;           // diffusion time
    int m = 8;                // embedding order
    double lambda_reg = -1;   // Tikhonov parameter; <0 picks 1e-6*tr(K_AA)/k
    CrossMode cross_mode = CrossMode::distance_driven;
};

/// Anchor-based approximation of the heat kernel K_{2t}:
///   Khat = C (K_AA + lambda I)^+ C^T,
/// where K_AA is the exact anchor block. exact_columns takes C from exact
/// kernel columns; distance_driven synthesizes C via the polarization
/// identity k(v,a) = (k(v,v) + k(a,a) - psi(SPD(v,a))^2) / 2 using exact
/// diagonal entries and the fitted link.
Eigen::MatrixXd nystrom_kernel(const EigenSystem& eig, const Graph& g,
                               const NystromConfig& cfg,
                               const std::vector<int>& anchors,
                               const MonotoneLink* link = nullptr);

struct NystromEmbedding {
    Eigen::MatrixXd coords;  // n x m, sqrt-eigenvalue scaled
    int achieved_rank = 0;   // numerically positive eigenvalues found
};

/// Diffusion-map coordinates from the top eigenpairs of Khat, skipping the
/// leading (trivial) one. Columns beyond the achieved rank are zero.
NystromEmbedding nystrom_embedding(const Eigen::MatrixXd& khat, int m);

struct ProcrustesResult {
    Eigen::MatrixXd aligned;  // centered X rotated onto centered Y
    Eigen::MatrixXd rotation;
    double mse = 0.0;         // mean squared entry error
};

/// Orthogonal Procrustes (rotations and reflections, no scaling) after
/// column-mean centering both inputs.
ProcrustesResult procrustes_align(const Eigen::MatrixXd& x,
                                  const Eigen::MatrixXd& y);

/// Pearson correlation between two equal-length value lists.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Correlation between approximate (from Khat via polarization) and exact
/// diffusion distances over all unordered pairs.
double distance_correlation(const Eigen::MatrixXd& khat,
                            const EigenSystem& eig, double t);

/// log10 spectral condition number; +infinity for exactly singular input.
double log10_condition(const Eigen::MatrixXd& mat);

struct ApproxReport {
    double rel_kernel_frob = 0.0;
    double coord_mse = 0.0;
    double dist_pearson = 0.0;
    double log10_cond_kaa = 0.0;
    double log10_cond_a_tri = 0.0;  // NaN when no trilateration system built
};

}  // namespace diffenc
