#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "diffenc/graph.hpp"
#include "diffenc/linkage.hpp"
#include "diffenc/spectral.hpp"

namespace diffenc {

/// Per-node feature matrix with a named column schema and the generating
/// parameters (written to the JSON sidecar).
struct FeatureTable {
    std::string kind;  // "DE", "LapPE", "RWSE", "HKS"
    std::vector<std::string> columns;
    Eigen::MatrixXd values;  // n rows
    nlohmann::json params;
};

/// Injected training-set standardization statistics for DE features.
struct StandardizeStats {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
};

/// Anchor hop distances, rescaled by the graph's median nonzero distance,
/// mapped through the radial transform, then standardized with the supplied
/// statistics (pass nullptr to skip standardization).
FeatureTable emit_de(const Graph& g, const std::vector<int>& anchors,
                     RadialKind kind, const StandardizeStats* stats = nullptr);

/// Column-wise mean/stddev over a set of DE tables, for training-set fits.
StandardizeStats fit_de_stats(const std::vector<FeatureTable>& tables);

/// Eigenvectors 2..m+1, normalized to zero mean and unit variance within
/// the graph. Sign ambiguity is recorded in the params metadata; optional
/// Gaussian noise is a training-time hook.
FeatureTable emit_lappe(const EigenSystem& eig, int m,
                        double noise_sigma = 0.0, std::uint64_t seed = 0);

/// Random-walk return probabilities (P^s)_vv for P = D^{-1} A.
FeatureTable emit_rwse(const Graph& g, const std::vector<int>& steps);

/// Heat-kernel signatures sum_{j<=trunc_k} exp(-t lambda_j) phi_j(v)^2.
FeatureTable emit_hks(const EigenSystem& eig, const std::vector<double>& times,
                      int trunc_k);

/// CSV with header "node_id,<kind>_0,..." plus a JSON params sidecar.
void write_feature_csv(const FeatureTable& table, const std::string& path);
void write_feature_sidecar(const FeatureTable& table, const std::string& path);

}  // namespace diffenc
