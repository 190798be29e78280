#include "diffenc/nystrom.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace diffenc {

Eigen::MatrixXd nystrom_kernel(const EigenSystem& eig, const Graph& g,
                               const NystromConfig& cfg,
                               const std::vector<int>& anchors,
                               const MonotoneLink* link) {
    const int n = eig.n();
    const int k = static_cast<int>(anchors.size());
    if (k < 1 || k > n)
        throw std::invalid_argument("nystrom_kernel: bad anchor count");
    if (std::set<int>(anchors.begin(), anchors.end()).size() != anchors.size())
        throw std::invalid_argument("nystrom_kernel: duplicate anchors");
    if (cfg.cross_mode == CrossMode::distance_driven && link == nullptr)
        throw std::invalid_argument("nystrom_kernel: distance_driven needs a link");

    const double t2 = 2.0 * cfg.t;

    Eigen::MatrixXd kaa(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            kaa(i, j) = kaa(j, i) = heat_kernel_entry(eig, t2, anchors[i], anchors[j]);

    Eigen::MatrixXd cross(n, k);
    if (cfg.cross_mode == CrossMode::exact_columns) {
        for (int v = 0; v < n; ++v)
            for (int j = 0; j < k; ++j)
                cross(v, j) = heat_kernel_entry(eig, t2, v, anchors[j]);
    } else {
        Eigen::VectorXd diag(n);
        for (int v = 0; v < n; ++v) diag(v) = heat_kernel_entry(eig, t2, v, v);
        DistanceMatrix spd = node_anchor_distances(g, anchors);
        for (int v = 0; v < n; ++v) {
            for (int j = 0; j < k; ++j) {
                if (spd.hops(v, j) == kUnreachable)
                    throw std::invalid_argument("nystrom_kernel: unreachable anchor");
                // hop 0 means v is the anchor: d(v,v) = 0 regardless of the
                // fitted link, whose samples start at hop 1
                double psi = spd.hops(v, j) == 0
                                 ? 0.0
                                 : evaluate_link(*link, spd.hops(v, j));
                cross(v, j) = 0.5 * (diag(v) + diag(anchors[j]) - psi * psi);
            }
        }
    }

    double lambda = cfg.lambda_reg;
    if (lambda < 0) lambda = 1e-6 * kaa.trace() / k;
    Eigen::MatrixXd reg = kaa + lambda * Eigen::MatrixXd::Identity(k, k);

    // Pseudo-inverse with a relative singular-value cutoff.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reg);
    const Eigen::VectorXd& w = es.eigenvalues();
    double wmax = w.cwiseAbs().maxCoeff();
    if (wmax <= 0.0)
        throw std::invalid_argument("nystrom_kernel: singular regularized block");
    Eigen::VectorXd winv = Eigen::VectorXd::Zero(k);
    for (int i = 0; i < k; ++i)
        if (std::abs(w(i)) > 1e-12 * wmax) winv(i) = 1.0 / w(i);
    Eigen::MatrixXd pinv =
        es.eigenvectors() * winv.asDiagonal() * es.eigenvectors().transpose();

    Eigen::MatrixXd khat = cross * pinv * cross.transpose();
    return 0.5 * (khat + khat.transpose());
}

NystromEmbedding nystrom_embedding(const Eigen::MatrixXd& khat, int m) {
    const int n = static_cast<int>(khat.rows());
    if (m < 1 || m > n - 1)
        throw std::invalid_argument("nystrom_embedding: m out of range");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(khat);
    const Eigen::VectorXd& w = es.eigenvalues();  // ascending
    if (w(0) < -1e-10 * std::max(1.0, w(n - 1)))
        throw std::invalid_argument("nystrom_embedding: input not PSD");

    NystromEmbedding out;
    out.coords = Eigen::MatrixXd::Zero(n, m);
    int positive = 0;
    for (int i = 0; i < n; ++i)
        if (w(i) > 1e-12 * std::max(1.0, w(n - 1))) ++positive;
    out.achieved_rank = positive;
    // Descending order: the top eigenpair is the trivial mode and is skipped
    // whenever further spectrum exists.
    const int skip = positive >= 2 ? 1 : 0;
    for (int j = 0; j < m; ++j) {
        int idx = n - 1 - skip - j;
        if (idx < 0 || w(idx) <= 1e-12 * std::max(1.0, w(n - 1))) break;
        out.coords.col(j) = std::sqrt(w(idx)) * es.eigenvectors().col(idx);
    }
    return out;
}

ProcrustesResult procrustes_align(const Eigen::MatrixXd& x,
                                  const Eigen::MatrixXd& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("procrustes_align: shape mismatch");
    Eigen::MatrixXd xc = x.rowwise() - x.colwise().mean();
    Eigen::MatrixXd yc = y.rowwise() - y.colwise().mean();
    ProcrustesResult res;
    Eigen::MatrixXd cross = xc.transpose() * yc;
    if (cross.norm() == 0.0) {
        res.rotation = Eigen::MatrixXd::Identity(x.cols(), x.cols());
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(
            cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
        res.rotation = svd.matrixU() * svd.matrixV().transpose();
    }
    res.aligned = xc * res.rotation;
    res.mse = (res.aligned - yc).squaredNorm() /
              static_cast<double>(x.rows() * x.cols());
    return res;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("pearson: need >= 2 paired values");
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double saa = 0, sbb = 0, sab = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
        sab += (a[i] - ma) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0)
        throw std::invalid_argument("pearson: zero-variance input");
    return sab / std::sqrt(saa * sbb);
}

double distance_correlation(const Eigen::MatrixXd& khat,
                            const EigenSystem& eig, double t) {
    const int n = static_cast<int>(khat.rows());
    std::vector<double> approx, exact;
    approx.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    exact.reserve(approx.capacity());
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            double d2 = khat(u, u) + khat(v, v) - 2.0 * khat(u, v);
            approx.push_back(std::sqrt(std::max(0.0, d2)));
            exact.push_back(diffusion_distance(eig, t, u, v));
        }
    }
    return pearson(approx, exact);
}

double log10_condition(const Eigen::MatrixXd& mat) {
    if (mat.rows() != mat.cols())
        throw std::invalid_argument("log10_condition: matrix not square");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return std::log10(smax / smin);
}

}  // namespace diffenc
