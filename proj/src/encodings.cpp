#include "diffenc/encodings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

namespace diffenc {

namespace {

std::vector<std::string> column_names(const std::string& kind, int count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (int i = 0; i < count; ++i) names.push_back(kind + "_" + std::to_string(i));
    return names;
}

const char* radial_name(RadialKind kind) {
    switch (kind) {
        case RadialKind::identity: return "identity";
        case RadialKind::exp_neg: return "exp_neg";
        case RadialKind::log1p: return "log1p";
    }
    return "?";
}

}  // namespace

FeatureTable emit_de(const Graph& g, const std::vector<int>& anchors,
                     RadialKind kind, const StandardizeStats* stats) {
    DistanceMatrix spd = node_anchor_distances(g, anchors);
    std::vector<double> nonzero;
    for (int v = 0; v < spd.rows(); ++v)
        for (int i = 0; i < spd.cols(); ++i)
            if (spd.hops(v, i) > 0) nonzero.push_back(spd.hops(v, i));
    if (nonzero.empty())
        throw std::invalid_argument("emit_de: all node-anchor distances are zero");
    std::sort(nonzero.begin(), nonzero.end());
    std::size_t h = nonzero.size() / 2;
    double median = nonzero.size() % 2 == 1
                        ? nonzero[h]
                        : 0.5 * (nonzero[h - 1] + nonzero[h]);

    FeatureTable table;
    table.kind = "DE";
    table.columns = column_names("DE", spd.cols());
    table.values.resize(spd.rows(), spd.cols());
    for (int v = 0; v < spd.rows(); ++v) {
        for (int i = 0; i < spd.cols(); ++i) {
            if (spd.hops(v, i) == kUnreachable)
                throw std::invalid_argument("emit_de: unreachable anchor");
            table.values(v, i) = radial_transform(spd.hops(v, i), kind, median);
        }
    }
    if (stats) {
        for (int i = 0; i < table.values.cols(); ++i)
            table.values.col(i) =
                (table.values.col(i).array() - stats->mean(i)) / stats->stddev(i);
    }
    table.params = {{"anchors", anchors},
                    {"radial", radial_name(kind)},
                    {"median_scale", median},
                    {"standardized", stats != nullptr}};
    return table;
}

StandardizeStats fit_de_stats(const std::vector<FeatureTable>& tables) {
    if (tables.empty()) throw std::invalid_argument("fit_de_stats: no tables");
    const int cols = static_cast<int>(tables.front().values.cols());
    long rows = 0;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(cols);
    Eigen::VectorXd sumsq = Eigen::VectorXd::Zero(cols);
    for (const auto& t : tables) {
        if (t.values.cols() != cols)
            throw std::invalid_argument("fit_de_stats: column count mismatch");
        rows += t.values.rows();
        sum += t.values.colwise().sum().transpose();
        sumsq += t.values.array().square().colwise().sum().matrix().transpose();
    }
    StandardizeStats stats;
    stats.mean = sum / static_cast<double>(rows);
    stats.stddev = (sumsq / static_cast<double>(rows) -
                    stats.mean.array().square().matrix())
                       .cwiseMax(0.0)
                       .cwiseSqrt()
                       .cwiseMax(1e-12);
    return stats;
}

FeatureTable emit_lappe(const EigenSystem& eig, int m, double noise_sigma,
                        std::uint64_t seed) {
    if (m < 1 || m > eig.n() - 1)
        throw std::invalid_argument("emit_lappe: m out of range");
    FeatureTable table;
    table.kind = "LapPE";
    table.columns = column_names("LapPE", m);
    table.values.resize(eig.n(), m);
    std::vector<int> flat_columns;
    const double n = static_cast<double>(eig.n());
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXd col = eig.vectors.col(j + 1);
        double mean = col.mean();
        col.array() -= mean;
        double var = col.squaredNorm() / n;
        if (var < 1e-24) {
            flat_columns.push_back(j);
            table.values.col(j) = col;
            continue;
        }
        table.values.col(j) = col / std::sqrt(var);
    }
    if (noise_sigma > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, noise_sigma);
        for (int v = 0; v < table.values.rows(); ++v)
            for (int j = 0; j < m; ++j) table.values(v, j) += gauss(rng);
    }
    table.params = {{"m", m},
                    {"sign_convention", "none; consumers must be sign-robust"},
                    {"noise_sigma", noise_sigma},
                    {"zero_variance_columns", flat_columns}};
    return table;
}

FeatureTable emit_rwse(const Graph& g, const std::vector<int>& steps) {
    if (steps.empty()) throw std::invalid_argument("emit_rwse: no steps");
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) == 0)
            throw std::invalid_argument("emit_rwse: isolated node");
    int max_step = *std::max_element(steps.begin(), steps.end());
    if (max_step < 1) throw std::invalid_argument("emit_rwse: steps must be >= 1");

    Eigen::MatrixXd walk = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adjacency[u]) walk(u, v) = 1.0 / g.degree(u);

    FeatureTable table;
    table.kind = "RWSE";
    table.columns = column_names("RWSE", static_cast<int>(steps.size()));
    table.values.resize(g.n, static_cast<int>(steps.size()));
    Eigen::MatrixXd power = walk;
    for (int s = 1; s <= max_step; ++s) {
        if (s > 1) power = power * walk;
        for (std::size_t i = 0; i < steps.size(); ++i)
            if (steps[i] == s)
                table.values.col(static_cast<int>(i)) = power.diagonal();
    }
    table.params = {{"steps", steps}};
    return table;
}

FeatureTable emit_hks(const EigenSystem& eig, const std::vector<double>& times,
                      int trunc_k) {
    if (times.empty()) throw std::invalid_argument("emit_hks: no times");
    if (trunc_k < 1 || trunc_k > eig.n())
        throw std::invalid_argument("emit_hks: trunc_k out of range");
    FeatureTable table;
    table.kind = "HKS";
    table.columns = column_names("HKS", static_cast<int>(times.size()));
    table.values.setZero(eig.n(), static_cast<int>(times.size()));
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (int j = 0; j < trunc_k; ++j) {
            table.values.col(static_cast<int>(i)) +=
                std::exp(-times[i] * eig.values(j)) *
                eig.vectors.col(j).array().square().matrix();
        }
    }
    table.params = {{"times", times}, {"trunc_k", trunc_k}};
    return table;
}

void write_feature_csv(const FeatureTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_feature_csv: cannot open " + path);
    out << "node_id";
    for (const auto& c : table.columns) out << "," << c;
    out << "\n";
    out.precision(17);
    for (int v = 0; v < table.values.rows(); ++v) {
        out << v;
        for (int j = 0; j < table.values.cols(); ++j) out << "," << table.values(v, j);
        out << "\n";
    }
}

void write_feature_sidecar(const FeatureTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_feature_sidecar: cannot open " + path);
    nlohmann::json sidecar = {{"kind", table.kind},
                              {"columns", table.columns},
                              {"params", table.params}};
    out << sidecar.dump(2) << "\n";
}

}  // namespace diffenc
