#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "expsum/common.hpp"
#include "expsum/model.hpp"

namespace expsum {

/// Configuration for the Hankel-subspace reference methods. Unlike the
/// localized estimator these need the model order K as an input.
struct SubspaceConfig {
    int hankel_rows = 0;       ///< p; 0 picks the balanced default floor((2n-1)/2)
    int model_order = 0;       ///< K, required
    int music_grid = 8192;     ///< pseudospectrum resolution
    double min_separation = 0.0;  ///< greedy peak suppression radius for MUSIC

    int resolved_rows(int n) const {
        return hankel_rows > 0 ? hankel_rows : (2 * n - 1) / 2;
    }
    void validate(int n) const {
        const int p = resolved_rows(n);
        if (model_order < 1) throw std::invalid_argument("SubspaceConfig: model_order must be >= 1");
        if (!(model_order < p)) throw std::invalid_argument("SubspaceConfig: need K < hankel_rows");
        if (p > n) throw std::invalid_argument("SubspaceConfig: hankel_rows must not exceed n");
        if (music_grid < 16) throw std::invalid_argument("SubspaceConfig: music_grid too small");
    }
};

struct BaselineEstimate {
    double lambda_hat = 0.0;
    std::complex<double> amp_hat;
};

namespace detail {

/// p x (2n-p) Hankel matrix of the samples re-indexed to 0..2n-2.
inline Eigen::MatrixXcd hankel_matrix(const SampleLine& samples, int p) {
    const int n = samples.line.n;
    const int total = 2 * n - 1;
    const int cols = total - p + 1;
    Eigen::MatrixXcd a(p, cols);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < cols; ++c)
            a(r, c) = samples.values[static_cast<std::size_t>(r + c)];
    return a;
}

struct HankelSubspace {
    Eigen::MatrixXcd signal;             ///< p x K leading left singular vectors
    std::vector<double> singular_values; ///< all p, descending
};

/// Leading left singular subspace via the p x p Gram matrix A A^H.
inline HankelSubspace hankel_subspace(const SampleLine& samples, int p, int K) {
    const Eigen::MatrixXcd a = hankel_matrix(samples, p);
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(p, p);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(a);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    if (es.info() != Eigen::Success)
        throw degenerate_error("hankel_subspace: eigendecomposition failed");

    HankelSubspace out;
    out.singular_values.resize(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        const double ev = std::max(es.eigenvalues()(p - 1 - i), 0.0);
        out.singular_values[static_cast<std::size_t>(i)] = std::sqrt(ev);
    }
    if (K > 0) {
        // the Gram route resolves singular values down to ~sqrt(eps)*top
        const double top = out.singular_values[0];
        const double kth = out.singular_values[static_cast<std::size_t>(K - 1)];
        if (!(top > 0.0) || kth <= 1e-7 * top)
            throw degenerate_error("hankel_subspace: numerical rank below the model order");
        out.signal.resize(p, K);
        for (int k = 0; k < K; ++k) out.signal.col(k) = es.eigenvectors().col(p - 1 - k);
    }
    return out;
}

}  // namespace detail

/// ESPRIT: shift invariance of the K-dimensional signal subspace of the
/// Hankel matrix. The samples follow sum_k A'_k z_k^m with z_k = e^{-i
/// lambda_k}, so the frequencies are minus the angles of the eigenvalues of
/// the least-squares shift operator. Amplitudes come from a Vandermonde
/// least-squares fit over all 2n-1 samples.
inline std::vector<BaselineEstimate> esprit_1d(const SampleLine& samples,
                                               const SubspaceConfig& cfg) {
    const int n = samples.line.n;
    cfg.validate(n);
    const int p = cfg.resolved_rows(n);
    const int K = cfg.model_order;

    const auto sub = detail::hankel_subspace(samples, p, K);
    const Eigen::MatrixXcd up = sub.signal.topRows(p - 1);
    const Eigen::MatrixXcd down = sub.signal.bottomRows(p - 1);
    const Eigen::MatrixXcd psi = up.colPivHouseholderQr().solve(down);
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(psi);
    if (es.info() != Eigen::Success) throw degenerate_error("esprit_1d: eigensolver failed");

    std::vector<double> lambdas(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) lambdas[static_cast<std::size_t>(k)] = wrap_to_pi(-std::arg(es.eigenvalues()(k)));

    // Vandermonde fit mu~(ell) ~ sum_k A_k e^{-i ell lambda_k}
    const int total = 2 * n - 1;
    Eigen::MatrixXcd vand(total, K);
    Eigen::VectorXcd rhs(total);
    for (int i = 0; i < total; ++i) {
        const int ell = i - (n - 1);
        rhs(i) = samples.values[static_cast<std::size_t>(i)];
        for (int k = 0; k < K; ++k)
            vand(i, k) = std::polar(1.0, -ell * lambdas[static_cast<std::size_t>(k)]);
    }
    const Eigen::VectorXcd amps = vand.colPivHouseholderQr().solve(rhs);

    std::vector<BaselineEstimate> out(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        out[static_cast<std::size_t>(k)].lambda_hat = lambdas[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(k)].amp_hat = amps(k);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.lambda_hat < b.lambda_hat; });
    return out;
}

/// MUSIC: noise-subspace pseudospectrum P(x) = 1 / (||a(x)||^2 - ||U_s^H
/// a(x)||^2) with steering vector a(x) = (e^{-i r x})_{r<p}, evaluated on
/// music_grid points; the K largest peaks are taken greedily with the
/// min_separation suppression rule and refined by a 3-point parabola on the
/// denominator.
inline std::vector<double> music_1d(const SampleLine& samples, const SubspaceConfig& cfg) {
    const int n = samples.line.n;
    cfg.validate(n);
    const int p = cfg.resolved_rows(n);
    const int K = cfg.model_order;
    const int G = cfg.music_grid;

    const auto sub = detail::hankel_subspace(samples, p, K);

    std::vector<double> den(static_cast<std::size_t>(G));
    std::vector<double> xs(static_cast<std::size_t>(G));
    Eigen::VectorXcd steer(p);
    for (int j = 0; j < G; ++j) {
        const double x = -pi + two_pi * j / G;
        xs[static_cast<std::size_t>(j)] = x;
        for (int r = 0; r < p; ++r) steer(r) = std::polar(1.0, -r * x);
        const double proj = (sub.signal.adjoint() * steer).squaredNorm();
        den[static_cast<std::size_t>(j)] = std::max(static_cast<double>(p) - proj, 0.0);
    }

    // peaks of 1/den = local minima of den
    std::vector<int> candidates;
    for (int j = 0; j < G; ++j) {
        const double v = den[static_cast<std::size_t>(j)];
        const double prev = den[static_cast<std::size_t>((j + G - 1) % G)];
        const double next = den[static_cast<std::size_t>((j + 1) % G)];
        if (v < prev && v < next) candidates.push_back(j);
    }
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        return den[static_cast<std::size_t>(a)] < den[static_cast<std::size_t>(b)];
    });

    std::vector<double> lambdas;
    for (int j : candidates) {
        if (static_cast<int>(lambdas.size()) == K) break;
        const double x = xs[static_cast<std::size_t>(j)];
        bool ok = true;
        for (double l : lambdas)
            if (circular_distance(x, l) <= cfg.min_separation) ok = false;
        if (!ok) continue;
        const double y0 = den[static_cast<std::size_t>((j + G - 1) % G)];
        const double y1 = den[static_cast<std::size_t>(j)];
        const double y2 = den[static_cast<std::size_t>((j + 1) % G)];
        const double dd = y0 - 2.0 * y1 + y2;
        double refined = x;
        if (dd > 0.0) {
            const double shift = std::clamp(0.5 * (y0 - y2) / dd, -0.5, 0.5);
            refined = wrap_to_pi(x + shift * two_pi / G);
        }
        lambdas.push_back(refined);
    }
    if (static_cast<int>(lambdas.size()) < K)
        throw degenerate_error("music_1d: pseudospectrum yielded fewer than K peaks");
    std::sort(lambdas.begin(), lambdas.end());
    return lambdas;
}

/// Full singular-value profile of the Hankel matrix, descending; the raw
/// material for the signal/noise eigenvalue overlap illustration.
inline std::vector<double> hankel_singular_values(const SampleLine& samples,
                                                  const SubspaceConfig& cfg) {
    const int n = samples.line.n;
    const int p = cfg.resolved_rows(n);
    if (p < 1 || p > n) throw std::invalid_argument("hankel_singular_values: bad hankel_rows");
    return detail::hankel_subspace(samples, p, 0).singular_values;
}

}  // namespace expsum
