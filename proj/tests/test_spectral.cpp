#include <doctest.h>

#include <cmath>

#include "diffenc/spectral.hpp"
#include "graph_fixtures.hpp"

using namespace diffenc;
using fixtures::complete_graph;
using fixtures::cycle_graph;
using fixtures::path_graph;
using fixtures::star_graph;

TEST_CASE("laplacian entries on K_2 and C_4") {
    // K_2, regular (r=1): [[1,-1],[-1,1]]
    Eigen::MatrixXd l2 = laplacian(complete_graph(2), LaplacianMode::regular);
    CHECK(l2(0, 0) == doctest::Approx(1.0));
    CHECK(l2(0, 1) == doctest::Approx(-1.0));
    CHECK(l2(1, 0) == doctest::Approx(-1.0));
    CHECK(l2(1, 1) == doctest::Approx(1.0));

    // C_4, regular (r=2): diagonal 1, neighbors -1/2
    Eigen::MatrixXd l4 = laplacian(cycle_graph(4), LaplacianMode::regular);
    for (int v = 0; v < 4; ++v) CHECK(l4(v, v) == doctest::Approx(1.0));
    CHECK(l4(0, 1) == doctest::Approx(-0.5));
    CHECK(l4(0, 3) == doctest::Approx(-0.5));
    CHECK(l4(0, 2) == doctest::Approx(0.0));
    // regular-mode on C_4 coincides with general mode
    Eigen::MatrixXd l4g = laplacian(cycle_graph(4), LaplacianMode::general);
    CHECK((l4 - l4g).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("general laplacian on a star has -1/sqrt(deg_u deg_v) off-diagonals") {
    // star with 3 leaves: center degree 3, leaves degree 1
    Eigen::MatrixXd l = laplacian(star_graph(3), LaplacianMode::general);
    CHECK(l(0, 1) == doctest::Approx(-1.0 / std::sqrt(3.0)));
    CHECK(l(1, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)));
    CHECK(l(1, 2) == doctest::Approx(0.0));
    for (int v = 0; v < 4; ++v) CHECK(l(v, v) == doctest::Approx(1.0));
}

TEST_CASE("regular mode requires a uniform degree") {
    CHECK_THROWS_AS(laplacian(path_graph(3), LaplacianMode::regular),
                    std::invalid_argument);
}

TEST_CASE("eigendecompose known spectra") {
    // C_4 normalized spectrum: {0, 1, 1, 2}
    EigenSystem c4 = eigendecompose(cycle_graph(4), LaplacianMode::regular);
    CHECK(c4.values(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c4.values(1) == doctest::Approx(1.0));
    CHECK(c4.values(2) == doctest::Approx(1.0));
    CHECK(c4.values(3) == doctest::Approx(2.0));

    // K_2: {0, 2}
    EigenSystem k2 = eigendecompose(complete_graph(2), LaplacianMode::regular);
    CHECK(k2.values(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(k2.values(1) == doctest::Approx(2.0));

    // K_n: {0, n/(n-1) with multiplicity n-1}
    EigenSystem k5 = eigendecompose(complete_graph(5), LaplacianMode::regular);
    CHECK(k5.values(0) == doctest::Approx(0.0).epsilon(1e-12));
    for (int j = 1; j < 5; ++j) CHECK(k5.values(j) == doctest::Approx(5.0 / 4.0));
}

TEST_CASE("eigenvalues are sorted, clamped nonnegative, vectors orthonormal") {
    Graph g = generate_random_regular(40, 4, 11);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    for (int j = 0; j < eig.n(); ++j) {
        CHECK(eig.values(j) >= 0.0);
        if (j > 0) CHECK(eig.values(j) >= eig.values(j - 1));
    }
    Eigen::MatrixXd gram = eig.vectors.transpose() * eig.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(40, 40)).cwiseAbs().maxCoeff() <
          1e-10);
    // reconstruction Phi Lambda Phi^T = L
    Eigen::MatrixXd l = laplacian(g, LaplacianMode::regular);
    Eigen::MatrixXd rec =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((rec - l).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("eigendecompose rejects asymmetric input") {
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 0.5, 0.2, 1.0;
    CHECK_THROWS_AS(eigendecompose(bad), std::invalid_argument);
}

TEST_CASE("heat kernel at t=0 is the identity") {
    EigenSystem eig = eigendecompose(cycle_graph(6), LaplacianMode::regular);
    Eigen::MatrixXd k0 = heat_kernel(eig, 0.0);
    CHECK((k0 - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("heat kernel on K_2 matches the closed form") {
    // Modes 0 (lambda=0) and (1/sqrt2)(1,-1) (lambda=2):
    // k_t(u,u) = (1 + e^{-2t}) / 2, k_t(u,v) = (1 - e^{-2t}) / 2.
    EigenSystem eig = eigendecompose(complete_graph(2), LaplacianMode::regular);
    double t = 1.0;
    Eigen::MatrixXd k = heat_kernel(eig, t);
    CHECK(k(0, 0) == doctest::Approx((1 + std::exp(-2.0)) / 2).epsilon(1e-12));
    CHECK(k(0, 1) == doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-12));
    CHECK(heat_kernel_entry(eig, t, 0, 1) == doctest::Approx(k(0, 1)));
}

TEST_CASE("heat kernel rows sum to 1 on regular graphs") {
    EigenSystem eig = eigendecompose(cycle_graph(5), LaplacianMode::regular);
    Eigen::MatrixXd k = heat_kernel(eig, 0.7);
    for (int v = 0; v < 5; ++v)
        CHECK(k.row(v).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((k - k.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("heat kernel semigroup K_s K_t = K_{s+t}") {
    Graph g = generate_random_regular(24, 4, 3);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    Eigen::MatrixXd prod = heat_kernel(eig, 0.4) * heat_kernel(eig, 0.9);
    CHECK((prod - heat_kernel(eig, 1.3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("diffusion distance on K_2 equals sqrt(2) e^{-2t}") {
    // Single nontrivial mode, lambda = 2, (phi(0)-phi(1))^2 = 2, so
    // d_t(0,1) = sqrt(2 e^{-4t}) = sqrt(2) e^{-2t}; at t=1 that is 0.191395...
    EigenSystem eig = eigendecompose(complete_graph(2), LaplacianMode::regular);
    double expected = std::sqrt(2.0) * std::exp(-2.0);
    CHECK(diffusion_distance(eig, 1.0, 0, 1) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.1913932).epsilon(1e-6));
}

TEST_CASE("spectral-sum and kernel-identity routes agree") {
    Graph g = generate_random_regular(32, 4, 17);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    for (double t : {0.3, 1.0, 2.5}) {
        for (auto [u, v] : {std::pair{0, 1}, {5, 20}, {7, 7}}) {
            double a = diffusion_distance(eig, t, u, v,
                                          DistanceMethod::spectral_sum);
            double b = diffusion_distance(eig, t, u, v,
                                          DistanceMethod::kernel_identity);
            CHECK(a == doctest::Approx(b).epsilon(1e-9));
        }
    }
    CHECK(diffusion_distance(eig, 1.0, 4, 4) == doctest::Approx(0.0));
}

TEST_CASE("truncated embedding column norms are exp(-t lambda)") {
    Graph g = generate_random_regular(20, 4, 5);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    double t = 0.8;
    DiffusionEmbedding emb = truncated_embedding(eig, t, 6);
    CHECK(emb.coords.rows() == 20);
    CHECK(emb.coords.cols() == 6);
    for (int j = 0; j < 6; ++j)
        CHECK(emb.coords.col(j).norm() ==
              doctest::Approx(std::exp(-t * eig.values(j + 1))).epsilon(1e-10));
}

TEST_CASE("full-order truncated distance recovers the diffusion distance") {
    Graph g = generate_random_regular(18, 4, 9);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    DiffusionEmbedding emb = truncated_embedding(eig, 1.0, 17);
    for (auto [u, v] : {std::pair{0, 1}, {3, 10}, {2, 17}}) {
        CHECK(truncated_distance(emb, u, v) ==
              doctest::Approx(diffusion_distance(eig, 1.0, u, v))
                  .epsilon(1e-10));
        CHECK(tail(eig, 1.0, 17, u, v) == doctest::Approx(0.0).epsilon(1e-10));
    }
}

TEST_CASE("exact decomposition d^2 = (d^(m))^2 + tail^2") {
    Graph g = generate_random_regular(30, 4, 13);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    double t = 1.0;
    for (int m : {1, 4, 15, 29}) {
        DiffusionEmbedding emb = truncated_embedding(eig, t, m);
        for (auto [u, v] : {std::pair{0, 1}, {2, 19}, {8, 25}}) {
            double full = diffusion_distance(eig, t, u, v);
            double dm = truncated_distance(emb, u, v);
            double tl = tail(eig, t, m, u, v);
            CHECK(dm * dm + tl * tl ==
                  doctest::Approx(full * full).epsilon(1e-10));
        }
    }
}

TEST_CASE("decomposition also holds in general mode on irregular graphs") {
    // the trivial eigenvector is not constant here, so this pins down the
    // convention that the distance runs over nontrivial modes only
    Graph g = fixtures::star_graph(5);
    EigenSystem eig = eigendecompose(g, LaplacianMode::general);
    for (int m : {1, 3, 5}) {
        DiffusionEmbedding emb = truncated_embedding(eig, 1.0, m);
        for (int u = 0; u < g.n; ++u) {
            for (int v = u + 1; v < g.n; ++v) {
                double full = diffusion_distance(eig, 1.0, u, v);
                double alt = diffusion_distance(eig, 1.0, u, v,
                                                DistanceMethod::kernel_identity);
                CHECK(full == doctest::Approx(alt).epsilon(1e-10));
                double dm = truncated_distance(emb, u, v);
                double tl = tail(eig, 1.0, m, u, v);
                CHECK(dm * dm + tl * tl ==
                      doctest::Approx(full * full).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("truncated distance is nondecreasing in m") {
    Graph g = generate_random_regular(26, 4, 29);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    double prev = 0.0;
    for (int m = 1; m < 26; ++m) {
        DiffusionEmbedding emb = truncated_embedding(eig, 1.0, m);
        double d = truncated_distance(emb, 0, 13);
        CHECK(d >= prev - 1e-12);
        prev = d;
    }
}
