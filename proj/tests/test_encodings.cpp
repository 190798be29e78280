#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "diffenc/encodings.hpp"
#include "graph_fixtures.hpp"

using namespace diffenc;
using fixtures::cycle_graph;
using fixtures::path_graph;

TEST_CASE("DE on a path: median rescale oracle") {
    // P_3 with anchors {0,2}: hop rows (0,2),(1,1),(2,0); nonzero hops
    // {1,1,2,2} have median 1.5
    FeatureTable de = emit_de(path_graph(3), {0, 2}, RadialKind::identity);
    CHECK(de.kind == "DE");
    CHECK(de.columns == std::vector<std::string>{"DE_0", "DE_1"});
    CHECK(de.params["median_scale"].get<double>() == doctest::Approx(1.5));
    CHECK(de.values(0, 0) == doctest::Approx(0.0));
    CHECK(de.values(0, 1) == doctest::Approx(2.0 / 1.5));
    CHECK(de.values(1, 0) == doctest::Approx(1.0 / 1.5));
    CHECK(de.values(2, 1) == doctest::Approx(0.0));
}

TEST_CASE("DE exp_neg maps zero distance to 1") {
    FeatureTable de = emit_de(path_graph(3), {0, 2}, RadialKind::exp_neg);
    CHECK(de.values(0, 0) == doctest::Approx(1.0));
    CHECK(de.values(1, 0) == doctest::Approx(std::exp(-1.0 / 1.5)));
    for (int v = 0; v < 3; ++v)
        for (int i = 0; i < 2; ++i) {
            CHECK(de.values(v, i) > 0.0);
            CHECK(de.values(v, i) <= 1.0);
        }
}

TEST_CASE("DE column count matches the anchor count") {
    Graph g = generate_random_regular(24, 4, 2);
    FeatureTable de = emit_de(g, {0, 5, 9, 17}, RadialKind::exp_neg);
    CHECK(de.values.rows() == 24);
    CHECK(de.values.cols() == 4);
    CHECK(de.params["anchors"].get<std::vector<int>>() ==
          std::vector<int>{0, 5, 9, 17});
}

TEST_CASE("DE is equivariant under graph relabeling") {
    Graph g = generate_random_regular(16, 4, 41);
    // relabel v -> (v + 3) mod 16
    auto perm = [](int v) { return (v + 3) % 16; };
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adjacency[u])
            if (u < v) edges.emplace_back(perm(u), perm(v));
    Graph h = make_graph(16, edges);
    std::vector<int> anchors = {1, 6, 12};
    std::vector<int> mapped;
    for (int a : anchors) mapped.push_back(perm(a));
    FeatureTable fg = emit_de(g, anchors, RadialKind::log1p);
    FeatureTable fh = emit_de(h, mapped, RadialKind::log1p);
    for (int v = 0; v < 16; ++v)
        for (int i = 0; i < 3; ++i)
            CHECK(fh.values(perm(v), i) == doctest::Approx(fg.values(v, i)));
}

TEST_CASE("DE standardization with injected statistics") {
    Graph g = generate_random_regular(20, 4, 6);
    FeatureTable raw = emit_de(g, {0, 7, 13}, RadialKind::exp_neg);
    StandardizeStats stats = fit_de_stats({raw});
    for (int i = 0; i < 3; ++i) {
        CHECK(stats.mean(i) == doctest::Approx(raw.values.col(i).mean()));
        double var = (raw.values.col(i).array() - stats.mean(i)).square().mean();
        CHECK(stats.stddev(i) == doctest::Approx(std::sqrt(var)));
    }
    FeatureTable std_table = emit_de(g, {0, 7, 13}, RadialKind::exp_neg, &stats);
    CHECK(std_table.params["standardized"].get<bool>());
    for (int i = 0; i < 3; ++i) {
        CHECK(std_table.values.col(i).mean() == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(std_table.values.col(i).squaredNorm() / 20.0 ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("LapPE columns have zero mean and unit variance") {
    Graph g = generate_random_regular(30, 4, 12);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    FeatureTable pe = emit_lappe(eig, 5);
    CHECK(pe.values.cols() == 5);
    for (int j = 0; j < 5; ++j) {
        CHECK(std::abs(pe.values.col(j).mean()) < 1e-10);
        CHECK(pe.values.col(j).squaredNorm() / 30.0 ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(pe.params["zero_variance_columns"].get<std::vector<int>>().empty());
    CHECK_THROWS_AS(emit_lappe(eig, 30), std::invalid_argument);
}

TEST_CASE("LapPE noise hook is deterministic per seed") {
    Graph g = generate_random_regular(20, 4, 1);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    FeatureTable a = emit_lappe(eig, 3, 0.1, 55);
    FeatureTable b = emit_lappe(eig, 3, 0.1, 55);
    FeatureTable c = emit_lappe(eig, 3, 0.1, 56);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    CHECK((a.values - c.values).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("RWSE return probabilities on K_2 and C_4") {
    FeatureTable k2 = emit_rwse(fixtures::complete_graph(2), {1, 2});
    CHECK(k2.values(0, 0) == doctest::Approx(0.0));  // odd walk cannot return
    CHECK(k2.values(0, 1) == doctest::Approx(1.0));
    CHECK(k2.values(1, 1) == doctest::Approx(1.0));

    FeatureTable c4 = emit_rwse(cycle_graph(4), {2});
    for (int v = 0; v < 4; ++v) CHECK(c4.values(v, 0) == doctest::Approx(0.5));
}

TEST_CASE("RWSE values are probabilities") {
    Graph g = generate_random_regular(24, 4, 14);
    FeatureTable rwse = emit_rwse(g, {1, 2, 4, 8, 16});
    CHECK(rwse.values.minCoeff() >= 0.0);
    CHECK(rwse.values.maxCoeff() <= 1.0);
    CHECK_THROWS_AS(emit_rwse(make_graph(3, {{0, 1}}), {1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(emit_rwse(g, {}), std::invalid_argument);
}

TEST_CASE("HKS with full truncation equals the heat-kernel diagonal") {
    Graph g = generate_random_regular(18, 4, 27);
    EigenSystem eig = eigendecompose(g, LaplacianMode::regular);
    FeatureTable hks = emit_hks(eig, {0.5, 2.0}, 18);
    Eigen::MatrixXd k1 = heat_kernel(eig, 0.5);
    Eigen::MatrixXd k2 = heat_kernel(eig, 2.0);
    for (int v = 0; v < 18; ++v) {
        CHECK(hks.values(v, 0) == doctest::Approx(k1(v, v)).epsilon(1e-12));
        CHECK(hks.values(v, 1) == doctest::Approx(k2(v, v)).epsilon(1e-12));
    }
}

TEST_CASE("HKS closed form on K_2 and t=0 normalization") {
    EigenSystem eig =
        eigendecompose(fixtures::complete_graph(2), LaplacianMode::regular);
    double t = 0.7;
    FeatureTable hks = emit_hks(eig, {t, 0.0}, 2);
    // modes: lambda=0 with phi^2=1/2 and lambda=2 with phi^2=1/2
    CHECK(hks.values(0, 0) == doctest::Approx(0.5 + 0.5 * std::exp(-2 * t)));
    CHECK(hks.values(0, 1) == doctest::Approx(1.0));  // sum of phi_j(v)^2
    CHECK(hks.values(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("feature CSV and sidecar round-trip") {
    FeatureTable de = emit_de(path_graph(3), {0, 2}, RadialKind::identity);
    std::string csv = "test_features.csv";
    std::string side = "test_features.json";
    write_feature_csv(de, csv);
    write_feature_sidecar(de, side);

    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "node_id,DE_0,DE_1");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
        ++rows;
    }
    CHECK(rows == 3);

    std::ifstream sin(side);
    nlohmann::json sidecar = nlohmann::json::parse(sin);
    CHECK(sidecar["kind"] == "DE");
    CHECK(sidecar["params"]["radial"] == "identity");
    CHECK(sidecar["columns"].size() == 2);
    std::remove(csv.c_str());
    std::remove(side.c_str());
}
