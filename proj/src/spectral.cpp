#include "diffenc/spectral.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace diffenc {

Eigen::MatrixXd laplacian(const Graph& g, LaplacianMode mode) {
    const int n = g.n;
    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
    if (mode == LaplacianMode::regular) {
        if (!g.degree_regular)
            throw std::invalid_argument("laplacian: regular mode on non-regular graph");
        const double inv_r = 1.0 / *g.degree_regular;
        for (int u = 0; u < n; ++u)
            for (int v : g.adjacency[u]) L(u, v) -= inv_r;
    } else {
        for (int u = 0; u < n; ++u)
            if (g.degree(u) == 0)
                throw std::invalid_argument("laplacian: isolated node in general mode");
        for (int u = 0; u < n; ++u)
            for (int v : g.adjacency[u])
                L(u, v) -= 1.0 / std::sqrt(static_cast<double>(g.degree(u)) * g.degree(v));
    }
    return L;
}

EigenSystem eigendecompose(const Eigen::MatrixXd& L, LaplacianMode mode) {
    if (L.rows() != L.cols())
        throw std::invalid_argument("eigendecompose: matrix not square");
    const double asym = (L - L.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12)
        throw std::invalid_argument("eigendecompose: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: eigensolver failed to converge");
    EigenSystem eig;
    eig.values = solver.eigenvalues().cwiseMax(0.0);
    eig.vectors = solver.eigenvectors();
    eig.mode = mode;
    return eig;
}

EigenSystem eigendecompose(const Graph& g, LaplacianMode mode) {
    return eigendecompose(laplacian(g, mode), mode);
}

Eigen::MatrixXd heat_kernel(const EigenSystem& eig, double t) {
    if (t < 0) throw std::invalid_argument("heat_kernel: negative time");
    Eigen::VectorXd w = (-t * eig.values.array()).exp();
    return eig.vectors * w.asDiagonal() * eig.vectors.transpose();
}

double heat_kernel_entry(const EigenSystem& eig, double t, int u, int v) {
    return ((-t * eig.values.array()).exp() *
            eig.vectors.row(u).transpose().array() *
            eig.vectors.row(v).transpose().array())
        .sum();
}

double diffusion_distance(const EigenSystem& eig, double t, int u, int v,
                          DistanceMethod method) {
    const int n = eig.n();
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::out_of_range("diffusion_distance: node id out of range");
    if (t <= 0) throw std::invalid_argument("diffusion_distance: t must be > 0");
    // The trivial mode is excluded in both routes: the embedding skips it, and
    // on non-regular graphs its eigenvector is not constant, so it would
    // otherwise break the exact decomposition against truncated + tail.
    const double trivial = std::exp(-2.0 * t * eig.values(0)) *
                           std::pow(eig.vectors(u, 0) - eig.vectors(v, 0), 2);
    if (method == DistanceMethod::spectral_sum) {
        Eigen::ArrayXd diff = (eig.vectors.row(u) - eig.vectors.row(v)).transpose().array();
        double s = ((-2.0 * t * eig.values.array()).exp() * diff.square()).sum();
        return std::sqrt(std::max(0.0, s - trivial));
    }
    double s = heat_kernel_entry(eig, 2 * t, u, u) +
               heat_kernel_entry(eig, 2 * t, v, v) -
               2.0 * heat_kernel_entry(eig, 2 * t, u, v);
    return std::sqrt(std::max(0.0, s - trivial));
}

DiffusionEmbedding truncated_embedding(const EigenSystem& eig, double t, int m) {
    const int n = eig.n();
    if (m < 1 || m > n - 1)
        throw std::invalid_argument("truncated_embedding: m out of range");
    if (m < n - 1 && eig.values(m + 1) - eig.values(m) < 1e-9) {
        std::cerr << "warning: truncation boundary splits a tied eigenspace "
                  << "(lambda_" << m + 1 << " ~ lambda_" << m + 2 << ")\n";
    }
    DiffusionEmbedding emb;
    emb.t = t;
    emb.m = m;
    emb.coords.resize(n, m);
    for (int j = 0; j < m; ++j)
        emb.coords.col(j) = std::exp(-t * eig.values(j + 1)) * eig.vectors.col(j + 1);
    return emb;
}

double truncated_distance(const DiffusionEmbedding& emb, int u, int v) {
    return (emb.coords.row(u) - emb.coords.row(v)).norm();
}

double tail(const EigenSystem& eig, double t, int m, int u, int v) {
    const int n = eig.n();
    double s = 0.0;
    for (int j = m + 1; j < n; ++j) {
        double diff = eig.vectors(u, j) - eig.vectors(v, j);
        s += std::exp(-2.0 * t * eig.values(j)) * diff * diff;
    }
    return std::sqrt(s);
}

}  // namespace diffenc
