#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diffenc/encodings.hpp"
#include "diffenc/linkage.hpp"
#include "diffenc/nystrom.hpp"
#include "diffenc/trilateration.hpp"

namespace diffenc {

/// Deterministic per-cell seed: root xor FNV-1a of the cell key, so results
/// do not depend on execution order.
std::uint64_t cell_seed(std::uint64_t root_seed, const std::string& cell_key);

// ---------------------------------------------------------------------------
// rrg-validate: linkage, Frobenius-gap, and trilateration study on random
// regular graphs.

struct RrgConfig {
    std::vector<int> n_list = {256, 512, 1024, 2048};
    int r = 6;
    double t = 1.0;
    int m = 8;
    int seeds = 3;
    std::uint64_t root_seed = 1;
    double log_base = 0.0;  // 0 -> natural log in R = ceil(log n)
    bool node_anchor_scope = false;  // fit the link on node-anchor pairs only
    int anchor_draws = 5;
    std::string out_dir = ".";
};

struct RrgCellResult {
    int n = 0;
    int seed_index = 0;
    std::uint64_t seed = 0;
    int radius = 0;
    bool ok = false;
    std::string error;

    double delta_hat = 0.0;
    double residual_rms = 0.0;
    long pair_count = 0;
    double delta_anchor = 0.0;  // max node-anchor residual (clamped link)
    double frob_gap_raw = 0.0;
    double frob_gap_norm = 0.0;
    double tri_median_err = 0.0;
    double cond_a = 0.0;
    int pointwise_violations = 0;
    bool frob_inequality_ok = false;
};

std::vector<RrgCellResult> run_rrg_validate(const RrgConfig& cfg);

/// Writes cells.csv, summary.csv (per-n aggregates), and a JSON sidecar.
void write_rrg_outputs(const RrgConfig& cfg,
                       const std::vector<RrgCellResult>& cells);

struct RrgSummaryRow {
    int n = 0;
    int radius = 0;
    int cells_ok = 0;
    double delta_hat_mean = 0.0, delta_hat_std = 0.0;
    double frob_gap_mean = 0.0, frob_gap_std = 0.0;
    double tri_err_median = 0.0;
    double cond_a_median = 0.0;
    long pointwise_violations = 0;
    bool frob_inequality_ok = true;
};

std::vector<RrgSummaryRow> summarize_rrg(const std::vector<RrgCellResult>& cells);

// ---------------------------------------------------------------------------
// diffusion-approx: Nystrom diagnostics on a corpus of edge-list graphs.

struct DiffusionApproxConfig {
    std::vector<std::string> inputs;  // edge-list files
    int k = 32;
    double t = 1.0;
    int m = 8;
    double lambda_reg = -1.0;  // <0 -> scale-aware default
    CrossMode cross_mode = CrossMode::distance_driven;
    double log_base = 0.0;
    std::string out_dir = ".";
    bool per_node_errors = false;  // extra per-graph node error CSV
};

struct DiffusionApproxRow {
    std::string graph_id;
    int n = 0;
    int k = 0;
    double lambda = 0.0;
    std::string mode;
    bool ok = false;
    std::string skip_reason;
    ApproxReport report;
};

std::vector<DiffusionApproxRow> run_diffusion_approx(
    const DiffusionApproxConfig& cfg);

void write_diffusion_approx_outputs(const DiffusionApproxConfig& cfg,
                                    const std::vector<DiffusionApproxRow>& rows);

// ---------------------------------------------------------------------------
// emit-features

struct EmitFeaturesConfig {
    std::vector<std::string> inputs;
    std::string kind = "DE";  // DE | LapPE | RWSE | HKS
    int k = 16;               // DE anchor count
    std::string radial = "exp_neg";
    bool standardize = false;  // DE: fit stats over the corpus, then apply
    int m = 8;                 // LapPE order
    std::vector<int> steps = {1, 2, 4, 8, 16};
    std::vector<double> times = {0.1, 0.5, 1, 2, 5};
    int trunc_k = 32;
    std::uint64_t root_seed = 1;
    std::string out_dir = ".";
};

void run_emit_features(const EmitFeaturesConfig& cfg);

// ---------------------------------------------------------------------------
// ablation-sweep over radial kinds and anchor counts.

struct AblationConfig {
    std::vector<std::string> inputs;
    std::vector<std::string> psi_list = {"identity", "exp_neg", "log1p"};
    std::vector<int> k_list = {4, 8, 16, 32};
    double t = 1.0;
    int m = 8;
    CrossMode cross_mode = CrossMode::exact_columns;
    std::uint64_t root_seed = 1;
    std::string out_dir = ".";
};

struct AblationRow {
    std::string psi;
    int k = 0;
    int graphs_ok = 0;
    double feature_mean = 0.0;
    double feature_std = 0.0;
    double median_rel_kernel_frob = 0.0;
    double median_delta_hat = 0.0;
};

std::vector<AblationRow> run_ablation_sweep(const AblationConfig& cfg);

void write_ablation_outputs(const AblationConfig& cfg,
                            const std::vector<AblationRow>& rows);

RadialKind parse_radial(const std::string& name);

}  // namespace diffenc
