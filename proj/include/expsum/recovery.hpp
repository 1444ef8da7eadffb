#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "expsum/common.hpp"
#include "expsum/model.hpp"
#include "expsum/spectrum.hpp"

namespace expsum {

struct RecoveryParams {
    double m_min = 1.0;       ///< minimal amplitude modulus (threshold is m_min/2)
    double eta = two_pi;      ///< minimal frequency separation (suppression radius is eta/4)
    bool refine_peak = false; ///< 3-point parabolic interpolation around the argmax node

    void validate() const {
        if (!(m_min > 0.0)) throw std::invalid_argument("RecoveryParams: m_min must be positive");
        if (!(eta > 0.0) || eta > two_pi)
            throw std::invalid_argument("RecoveryParams: eta must be in (0, 2*pi]");
    }
};

/// A contiguous circular run of grid nodes above threshold, together with the
/// accepted peak inside it.
struct Cluster {
    std::size_t run_begin = 0;   ///< first node of the run (indices wrap mod N)
    std::size_t run_length = 0;  ///< number of nodes in the run
    std::size_t peak_index = 0;
    std::complex<double> peak_value;

    double diameter(std::size_t grid_size) const {
        return static_cast<double>(run_length - 1) * two_pi / static_cast<double>(grid_size);
    }
};

struct RecoveredSource1D {
    double lambda_hat = 0.0;       ///< angle in (-pi, pi]
    double amp_hat = 0.0;          ///< |sigma_n(lambda_hat)|
    double phase_hat = 0.0;        ///< arg sigma_n(lambda_hat)
    double cluster_diameter = 0.0;
};

/// Indices j with |sigma_n(x_j)| >= m_min/2, in increasing order.
inline std::vector<std::size_t> threshold_set(const SpectrumGrid& grid, double m_min) {
    if (!(m_min > 0.0)) throw std::invalid_argument("threshold_set: m_min must be positive");
    std::vector<std::size_t> out;
    const double thr = m_min / 2.0;
    for (std::size_t j = 0; j < grid.grid_size; ++j)
        if (std::abs(grid.values[j]) >= thr) out.push_back(j);
    return out;
}

namespace detail {

/// Circular runs of consecutive indices in a sorted index set over 0..N-1.
/// Each run is (begin, length); a run crossing N-1 -> 0 is reported once.
inline std::vector<std::pair<std::size_t, std::size_t>> circular_runs(
    const std::vector<std::size_t>& sorted_indices, std::size_t N) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    if (sorted_indices.empty()) return runs;
    if (sorted_indices.size() == N) {
        runs.emplace_back(0, N);
        return runs;
    }
    std::size_t begin = sorted_indices[0];
    std::size_t prev = begin;
    for (std::size_t k = 1; k < sorted_indices.size(); ++k) {
        const std::size_t j = sorted_indices[k];
        if (j == prev + 1) {
            prev = j;
        } else {
            runs.emplace_back(begin, prev - begin + 1);
            begin = prev = j;
        }
    }
    runs.emplace_back(begin, prev - begin + 1);
    // merge a wrap-around pair
    if (runs.size() > 1 && runs.front().first == 0 &&
        runs.back().first + runs.back().second == N) {
        runs.front().first = runs.back().first;
        runs.front().second += runs.back().second;
        runs.pop_back();
    }
    return runs;
}

inline bool run_contains(const std::pair<std::size_t, std::size_t>& run, std::size_t j,
                         std::size_t N) {
    const std::size_t offset = (j + N - run.first) % N;
    return offset < run.second;
}

}  // namespace detail

/// Peak picking on the circular grid: candidates are strict local maxima of
/// |sigma_n| with value >= m_min/2; candidates are sorted by descending
/// modulus (ties broken by lower index) and accepted greedily when farther
/// than eta/4 from every already-accepted peak. Each accepted peak carries
/// the maximal threshold run containing it. An empty result signals K_hat = 0.
inline std::vector<Cluster> find_peaks(const SpectrumGrid& grid, const RecoveryParams& params) {
    params.validate();
    const std::size_t N = grid.grid_size;
    const double thr = params.m_min / 2.0;

    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < N; ++j) {
        const double v = std::abs(grid.values[j]);
        if (v < thr) continue;
        const double prev = std::abs(grid.values[(j + N - 1) % N]);
        const double next = std::abs(grid.values[(j + 1) % N]);
        if (v > prev && v > next) candidates.push_back(j);
    }
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        const double va = std::abs(grid.values[a]);
        const double vb = std::abs(grid.values[b]);
        if (va != vb) return va > vb;
        return a < b;
    });

    std::vector<std::size_t> accepted;
    for (std::size_t j : candidates) {
        bool ok = true;
        for (std::size_t k : accepted) {
            if (circular_distance(grid.angle(j), grid.angle(k)) <= params.eta / 4.0) {
                ok = false;
                break;
            }
        }
        if (ok) accepted.push_back(j);
    }

    const auto runs = detail::circular_runs(threshold_set(grid, params.m_min), N);
    std::vector<Cluster> clusters;
    clusters.reserve(accepted.size());
    for (std::size_t j : accepted) {
        Cluster c;
        c.peak_index = j;
        c.peak_value = grid.values[j];
        for (const auto& run : runs) {
            if (detail::run_contains(run, j, N)) {
                c.run_begin = run.first;
                c.run_length = run.second;
                break;
            }
        }
        clusters.push_back(c);
    }
    return clusters;
}

/// Per accepted cluster: lambda_hat is the grid angle of the peak (optionally
/// parabolic-refined), amp_hat and phase_hat are read from a pointwise
/// evaluation of sigma_n at lambda_hat.
inline std::vector<RecoveredSource1D> estimate_sources(const SpectrumGrid& grid,
                                                       const RecoveryParams& params) {
    const auto clusters = find_peaks(grid, params);
    const std::size_t N = grid.grid_size;

    std::vector<RecoveredSource1D> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) {
        double lambda = grid.angle(c.peak_index);
        if (params.refine_peak) {
            const double y0 = std::abs(grid.values[(c.peak_index + N - 1) % N]);
            const double y1 = std::abs(grid.values[c.peak_index]);
            const double y2 = std::abs(grid.values[(c.peak_index + 1) % N]);
            const double den = y0 - 2.0 * y1 + y2;
            if (den < 0.0) {
                double shift = 0.5 * (y0 - y2) / den;
                shift = std::clamp(shift, -0.5, 0.5);
                lambda += shift * grid.step();
            }
        }
        lambda = wrap_to_pi(lambda);
        const std::complex<double> s = eval_sigma_point(grid.samples, grid.weights, lambda);

        RecoveredSource1D r;
        r.lambda_hat = lambda;
        r.amp_hat = std::abs(s);
        r.phase_hat = std::arg(s);
        r.cluster_diameter = c.diameter(grid.grid_size);
        out.push_back(r);
    }
    return out;
}

/// Empirical localization constant: L = sup_x |Phi_n(x)| * max(1, (n|x|)^S),
/// measured on a dense grid (grid_size = 0 picks the smallest power of two
/// >= 64 n).
inline double measure_localization_constant(const KernelWeights& weights, int decay_power,
                                            std::size_t grid_size = 0) {
    if (decay_power < 2) throw std::invalid_argument("measure_localization_constant: S must be >= 2");
    const int n = weights.n;
    const std::size_t N = grid_size == 0
        ? std::bit_ceil(static_cast<std::size_t>(64) * static_cast<std::size_t>(n))
        : grid_size;

    SampleLine unit;
    unit.line.offset = {0.0};
    unit.line.direction = {1.0};
    unit.line.n = n;
    unit.values.assign(static_cast<std::size_t>(2 * n - 1), {1.0, 0.0});
    const SpectrumGrid grid = eval_sigma_grid(unit, weights, N);  // = Phi_n on the grid

    double best = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const double nx = static_cast<double>(n) * std::abs(grid.angle(j));
        const double scale = std::max(1.0, std::pow(nx, decay_power));
        best = std::max(best, std::abs(grid.values[j]) * scale);
    }
    return best;
}

/// Observed status of the recovery theorem's conclusions for one realization.
/// The threshold set is decomposed exactly as in the theorem: G_l is the part
/// of G within C_emp/n of the true lambda_l. Failures are reported, never
/// thrown.
struct TheoremReport {
    bool disjoint_union_ok = false;   ///< G is covered by exactly K nonempty groups
    bool diameter_ok = false;         ///< every group has diameter <= 2*C_emp/n
    bool separation_ok = false;       ///< pairwise group distance >= eta/2
    bool interval_inclusion_ok = false;  ///< each {|x-lambda_l| <= 1/(4n)} lies in its group
    bool n_large_enough = false;      ///< n >= 4*C_emp/eta_true (theorem precondition)

    int group_count = 0;              ///< nonempty groups among the K balls
    int stray_nodes = 0;              ///< threshold nodes not within C_emp/n of any lambda
    double max_diameter = 0.0;
    double min_separation = 0.0;      ///< +inf when fewer than two groups
    double l_emp = 0.0;
    double c_emp = 0.0;

    bool all_ok() const {
        return disjoint_union_ok && diameter_ok && separation_ok && interval_inclusion_ok;
    }
};

/// Check the theorem's four conclusions against a known 1D truth. The truth
/// frequencies are the projections <direction, w_k> of the model generating
/// the sample line, wrapped to (-pi, pi]. C_emp = max(1, (16 M L_emp / m)^(1/S))
/// with L_emp measured from Phi_n.
inline TheoremReport verify_theorem_conditions(const SpectrumGrid& grid,
                                               const RecoveryParams& params,
                                               const PointSourceModel& truth,
                                               int decay_power = 4) {
    params.validate();
    truth.validate();
    if (truth.q != 1)
        throw std::invalid_argument("verify_theorem_conditions: truth must be 1D (projected)");

    const int n = grid.degree();
    const std::size_t N = grid.grid_size;
    const std::size_t K = truth.sources.size();

    std::vector<double> lambdas;
    lambdas.reserve(K);
    for (const auto& s : truth.sources) lambdas.push_back(wrap_to_pi(s.frequency[0]));

    TheoremReport rep;
    rep.l_emp = measure_localization_constant(grid.weights, decay_power);
    const double M = truth.total_mass();
    const double m_min = truth.min_modulus();
    rep.c_emp = std::max(1.0, std::pow(16.0 * M * rep.l_emp / m_min, 1.0 / decay_power));
    const double radius = rep.c_emp / static_cast<double>(n);

    double eta_true = two_pi;
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = a + 1; b < K; ++b)
            eta_true = std::min(eta_true, circular_distance(lambdas[a], lambdas[b]));
    rep.n_large_enough = K < 2 || static_cast<double>(n) >= 4.0 * rep.c_emp / eta_true;

    // group the threshold nodes by the nearest lambda within C_emp/n
    const auto gset = threshold_set(grid, params.m_min);
    std::vector<std::vector<std::size_t>> groups(K);
    for (std::size_t j : gset) {
        const double x = grid.angle(j);
        std::size_t best = K;
        double best_d = radius;
        for (std::size_t k = 0; k < K; ++k) {
            const double d = circular_distance(x, lambdas[k]);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        if (best == K)
            ++rep.stray_nodes;
        else
            groups[best].push_back(j);
    }
    for (const auto& g : groups)
        if (!g.empty()) ++rep.group_count;
    rep.disjoint_union_ok = rep.stray_nodes == 0 && rep.group_count == static_cast<int>(K);

    // diameters (angular extent of each group around its lambda)
    rep.max_diameter = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        if (groups[k].empty()) continue;
        double lo = 0.0, hi = 0.0;  // signed offsets from lambda_k
        for (std::size_t j : groups[k]) {
            const double d = wrap_to_pi(grid.angle(j) - lambdas[k]);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        rep.max_diameter = std::max(rep.max_diameter, hi - lo);
    }
    rep.diameter_ok = rep.max_diameter <= 2.0 * rep.c_emp / static_cast<double>(n);

    // pairwise group separation
    rep.min_separation = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = a + 1; b < K; ++b) {
            if (groups[a].empty() || groups[b].empty()) continue;
            for (std::size_t ja : groups[a])
                for (std::size_t jb : groups[b])
                    rep.min_separation = std::min(
                        rep.min_separation, circular_distance(grid.angle(ja), grid.angle(jb)));
        }
    }
    rep.separation_ok = rep.min_separation >= params.eta / 2.0;

    // interval inclusion: nodes within 1/(4n) of each lambda must be above
    // threshold (they then belong to that lambda's group by construction)
    const double thr = params.m_min / 2.0;
    rep.interval_inclusion_ok = true;
    const double half_interval = 1.0 / (4.0 * static_cast<double>(n));
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t j = 0; j < N; ++j) {
            if (circular_distance(grid.angle(j), lambdas[k]) <= half_interval &&
                std::abs(grid.values[j]) < thr) {
                rep.interval_inclusion_ok = false;
                break;
            }
        }
        if (!rep.interval_inclusion_ok) break;
    }
    return rep;
}

}  // namespace expsum
