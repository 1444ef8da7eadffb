#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "expsum/common.hpp"
#include "expsum/model.hpp"
#include "expsum/recovery.hpp"
#include "expsum/spectrum.hpp"

namespace expsum {

/// Basis of sampling directions Delta_1 .. Delta_q (rows).
struct DirectionBasis {
    int q = 0;
    std::vector<std::vector<double>> rows;

    Eigen::MatrixXd matrix() const {
        Eigen::MatrixXd m(q, q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return m;
    }

    void validate() const {
        if (q < 1 || static_cast<int>(rows.size()) != q)
            throw std::invalid_argument("DirectionBasis: needs q rows");
        for (const auto& r : rows)
            if (static_cast<int>(r.size()) != q)
                throw std::invalid_argument("DirectionBasis: row dimension mismatch");
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix());
        const auto& sv = svd.singularValues();
        if (!(sv(q - 1) > 1e-10 * sv(0)))
            throw degenerate_error("DirectionBasis: rows are numerically singular");
    }

    double condition_number() const {
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix());
        return svd.singularValues()(0) / svd.singularValues()(q - 1);
    }

    std::vector<double> project(const std::vector<double>& w) const {
        std::vector<double> out(static_cast<std::size_t>(q), 0.0);
        for (int d = 0; d < q; ++d) {
            double s = 0.0;
            for (int j = 0; j < q; ++j)
                s += rows[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(d)] = s;
        }
        return out;
    }
};

/// Result of one univariate run along the line offset = Delta_{coarse_dir},
/// direction = Delta_{accurate_dir}: grid-accurate <Delta_acc, w> per peak and
/// a coarse <Delta_coarse, w> read from the peak phase (valid for real
/// positive amplitudes; a complex amplitude |A|e^{i phi} biases it by -phi).
struct DirectionalEstimate {
    int accurate_dir = 0;  ///< 1-based direction index d1
    int coarse_dir = 0;    ///< 1-based direction index d2
    struct Entry {
        double accurate_coord = 0.0;  ///< angle in (-pi, pi]
        double coarse_coord = 0.0;    ///< angle in (-pi, pi]
        double amp = 0.0;
    };
    std::vector<Entry> entries;
};

/// Run the univariate estimator on one sampled line. With the e^{-i<.,w>}
/// sampling convention and the e^{+i ell x} kernel, sigma_n at a peak is
/// approximately A_k e^{-i<Delta_coarse, w_k>}, so the coarse coordinate is
/// minus the measured phase.
inline DirectionalEstimate recover_direction_pair(const SampleLine& samples,
                                                  const KernelWeights& weights,
                                                  const RecoveryParams& params,
                                                  int accurate_dir, int coarse_dir,
                                                  std::size_t grid_size = 0) {
    const SpectrumGrid grid = eval_sigma_grid(samples, weights, grid_size);
    const auto sources = estimate_sources(grid, params);

    DirectionalEstimate est;
    est.accurate_dir = accurate_dir;
    est.coarse_dir = coarse_dir;
    est.entries.reserve(sources.size());
    for (const auto& s : sources) {
        DirectionalEstimate::Entry e;
        e.accurate_coord = s.lambda_hat;
        e.coarse_coord = wrap_to_pi(-s.phase_hat);
        e.amp = s.amp_hat;
        est.entries.push_back(e);
    }
    return est;
}

/// One matched pair of per-direction estimates; both coordinates are the
/// accurate ones, the amplitude comes from side a.
struct PairedEstimate {
    double coord_a = 0.0;           ///< accurate coordinate from est_a
    double coord_b = 0.0;           ///< accurate coordinate from est_b
    double amp = 0.0;
    double pairing_distance = 0.0;  ///< circular distance used by the matcher
    std::size_t index_a = 0;
    std::size_t index_b = 0;
};

struct PairingResult {
    std::vector<PairedEstimate> pairs;
    std::vector<std::size_t> unpaired_a;
    std::vector<std::size_t> unpaired_b;
};

/// Greedy nearest-neighbor matching: est_a's accurate coordinates against
/// est_b's coarse readout of the same direction. Repeatedly takes the
/// globally closest remaining pair; leftovers are reported unpaired.
inline PairingResult pair_estimates(const DirectionalEstimate& est_a,
                                    const DirectionalEstimate& est_b) {
    if (est_a.entries.empty() || est_b.entries.empty())
        throw std::invalid_argument("pair_estimates: empty estimate");
    if (est_a.accurate_dir != est_b.coarse_dir)
        throw std::invalid_argument("pair_estimates: direction roles do not line up");

    const std::size_t na = est_a.entries.size();
    const std::size_t nb = est_b.entries.size();
    std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
    cand.reserve(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            cand.emplace_back(circular_distance(est_a.entries[i].accurate_coord,
                                                est_b.entries[j].coarse_coord),
                              i, j);
    std::sort(cand.begin(), cand.end());

    PairingResult result;
    std::vector<bool> used_a(na, false), used_b(nb, false);
    for (const auto& [d, i, j] : cand) {
        if (used_a[i] || used_b[j]) continue;
        used_a[i] = used_b[j] = true;
        PairedEstimate p;
        p.coord_a = est_a.entries[i].accurate_coord;
        p.coord_b = est_b.entries[j].accurate_coord;
        p.amp = est_a.entries[i].amp;
        p.pairing_distance = d;
        p.index_a = i;
        p.index_b = j;
        result.pairs.push_back(p);
    }
    for (std::size_t i = 0; i < na; ++i)
        if (!used_a[i]) result.unpaired_a.push_back(i);
    for (std::size_t j = 0; j < nb; ++j)
        if (!used_b[j]) result.unpaired_b.push_back(j);
    return result;
}

/// Accurate coordinates <Delta_d, w> for d = 1..q of one source, matched
/// across lines, plus its amplitude estimate.
struct CoordinateTuple {
    std::vector<double> coords;
    double amp = 0.0;
};

struct AssembledSources {
    std::vector<std::vector<double>> w;  ///< recovered frequency vectors
    std::vector<double> amp;
    std::vector<double> pairing_distance;  ///< max coarse distance used per source
    std::size_t dropped_unpaired = 0;      ///< estimates left unmatched across lines

    std::size_t count() const { return w.size(); }
};

/// Solve Delta * w = b per source. Requires every true <Delta_d, w_k> to lie
/// in (-pi, pi]; wrapped coordinates assemble to the alias of w in the basis
/// cell (see fold_into_basis_cell).
inline AssembledSources assemble_full(const std::vector<CoordinateTuple>& tuples,
                                      const DirectionBasis& basis) {
    basis.validate();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis.matrix());

    AssembledSources out;
    for (const auto& t : tuples) {
        if (static_cast<int>(t.coords.size()) != basis.q)
            throw std::invalid_argument("assemble_full: coordinate tuple dimension mismatch");
        Eigen::VectorXd b(basis.q);
        for (int d = 0; d < basis.q; ++d) b(d) = t.coords[static_cast<std::size_t>(d)];
        const Eigen::VectorXd w = lu.solve(b);
        out.w.emplace_back(w.data(), w.data() + basis.q);
        out.amp.push_back(t.amp);
        out.pairing_distance.push_back(0.0);
    }
    return out;
}

/// The representative of w in the fundamental cell of the sampling basis:
/// Delta^{-1} wrap(Delta w). Equals w whenever every <Delta_d, w> already
/// lies in (-pi, pi]; this is what the sampling scheme can identify.
inline std::vector<double> fold_into_basis_cell(const DirectionBasis& basis,
                                                const std::vector<double>& w) {
    Eigen::VectorXd b(basis.q);
    const auto proj = basis.project(w);
    for (int d = 0; d < basis.q; ++d) b(d) = wrap_to_pi(proj[static_cast<std::size_t>(d)]);
    const Eigen::VectorXd folded = Eigen::PartialPivLU<Eigen::MatrixXd>(basis.matrix()).solve(b);
    return std::vector<double>(folded.data(), folded.data() + basis.q);
}

inline PointSourceModel fold_into_basis_cell(const DirectionBasis& basis,
                                             const PointSourceModel& model) {
    PointSourceModel out = model;
    for (auto& s : out.sources) s.frequency = fold_into_basis_cell(basis, s.frequency);
    return out;
}

/// The anchored line set: (Delta_2 + ell Delta_1), then (Delta_1 + ell Delta_d)
/// for d = 2..q. Every line pairs back to direction 1 through its coarse
/// readout, for a total of (2n-1) q samples. For q = 1 the single line has
/// offset 0.
inline std::vector<SamplingLine> anchored_lines(const DirectionBasis& basis, int n) {
    basis.validate();
    std::vector<SamplingLine> lines;
    if (basis.q == 1) {
        SamplingLine l;
        l.offset = {0.0};
        l.direction = basis.rows[0];
        l.n = n;
        lines.push_back(l);
        return lines;
    }
    {
        SamplingLine l;
        l.offset = basis.rows[1];
        l.direction = basis.rows[0];
        l.n = n;
        lines.push_back(l);
    }
    for (int d = 2; d <= basis.q; ++d) {
        SamplingLine l;
        l.offset = basis.rows[0];
        l.direction = basis.rows[static_cast<std::size_t>(d - 1)];
        l.n = n;
        lines.push_back(l);
    }
    return lines;
}

/// Full multidimensional estimator on anchored lines: univariate recovery per
/// line, pairing of every secondary line back to the direction-1 anchor, and
/// a linear solve against the basis. Sources that fail to pair on some line
/// are dropped and counted.
inline AssembledSources recover_anchored(const std::vector<SampleLine>& lines,
                                         const DirectionBasis& basis,
                                         const KernelWeights& weights,
                                         const RecoveryParams& params,
                                         std::size_t grid_size = 0) {
    basis.validate();
    if (static_cast<int>(lines.size()) != basis.q)
        throw std::invalid_argument("recover_anchored: expected one line per direction");

    if (basis.q == 1) {
        const DirectionalEstimate est =
            recover_direction_pair(lines[0], weights, params, 1, 1, grid_size);
        std::vector<CoordinateTuple> tuples;
        for (const auto& e : est.entries) tuples.push_back({{e.accurate_coord}, e.amp});
        return assemble_full(tuples, basis);
    }

    // line 0: accurate d1, coarse d2; line d-1 (d >= 2): accurate d, coarse d1
    std::vector<DirectionalEstimate> ests;
    ests.push_back(recover_direction_pair(lines[0], weights, params, 1, 2, grid_size));
    for (int d = 2; d <= basis.q; ++d)
        ests.push_back(recover_direction_pair(lines[static_cast<std::size_t>(d - 1)], weights,
                                              params, d, 1, grid_size));

    AssembledSources empty;
    if (ests[0].entries.empty()) return empty;
    const std::size_t anchor_count = ests[0].entries.size();

    // matched[i][d-2] = accurate <Delta_d, w> for anchor source i
    std::vector<std::vector<double>> matched(anchor_count,
                                             std::vector<double>(static_cast<std::size_t>(basis.q - 1),
                                                                 std::numeric_limits<double>::quiet_NaN()));
    std::vector<double> worst_distance(anchor_count, 0.0);
    std::size_t dropped = 0;
    for (int d = 2; d <= basis.q; ++d) {
        const auto& est_d = ests[static_cast<std::size_t>(d - 1)];
        if (est_d.entries.empty()) {
            dropped += anchor_count;
            continue;
        }
        const PairingResult pr = pair_estimates(ests[0], est_d);
        for (const auto& p : pr.pairs) {
            matched[p.index_a][static_cast<std::size_t>(d - 2)] = p.coord_b;
            worst_distance[p.index_a] = std::max(worst_distance[p.index_a], p.pairing_distance);
        }
        dropped += pr.unpaired_a.size() + pr.unpaired_b.size();
    }

    std::vector<CoordinateTuple> tuples;
    std::vector<double> distances;
    for (std::size_t i = 0; i < anchor_count; ++i) {
        bool complete = true;
        for (double c : matched[i])
            if (std::isnan(c)) complete = false;
        if (!complete) {
            ++dropped;
            continue;
        }
        CoordinateTuple t;
        t.coords.push_back(ests[0].entries[i].accurate_coord);
        for (double c : matched[i]) t.coords.push_back(c);
        t.amp = ests[0].entries[i].amp;
        tuples.push_back(t);
        distances.push_back(worst_distance[i]);
    }

    AssembledSources out = assemble_full(tuples, basis);
    out.pairing_distance = distances;
    out.dropped_unpaired = dropped;
    return out;
}

/// Radius-r match report between a truth model and assembled estimates.
struct MatchReport {
    double radius = 0.0;
    int matched = 0;
    double rmse = 0.0;  ///< over matched pairs; 0 when nothing matched
    std::vector<std::size_t> unmatched_truth;
    std::vector<std::size_t> unmatched_est;
};

/// Greedy closest-pair matching in Euclidean R^q; a pair counts iff its
/// distance is below r.
inline MatchReport match_points(const PointSourceModel& truth, const AssembledSources& est,
                                double r) {
    if (!(r > 0.0)) throw std::invalid_argument("match_points: radius must be positive");
    const std::size_t nt = truth.sources.size();
    const std::size_t ne = est.count();

    std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
    cand.reserve(nt * ne);
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < ne; ++j) {
            double d2 = 0.0;
            for (int d = 0; d < truth.q; ++d) {
                const double diff = truth.sources[i].frequency[static_cast<std::size_t>(d)] -
                                    est.w[j][static_cast<std::size_t>(d)];
                d2 += diff * diff;
            }
            const double dist = std::sqrt(d2);
            if (dist < r) cand.emplace_back(dist, i, j);
        }
    }
    std::sort(cand.begin(), cand.end());

    MatchReport rep;
    rep.radius = r;
    std::vector<bool> used_t(nt, false), used_e(ne, false);
    double sq_sum = 0.0;
    for (const auto& [d, i, j] : cand) {
        if (used_t[i] || used_e[j]) continue;
        used_t[i] = used_e[j] = true;
        ++rep.matched;
        sq_sum += d * d;
    }
    rep.rmse = rep.matched > 0 ? std::sqrt(sq_sum / rep.matched) : 0.0;
    for (std::size_t i = 0; i < nt; ++i)
        if (!used_t[i]) rep.unmatched_truth.push_back(i);
    for (std::size_t j = 0; j < ne; ++j)
        if (!used_e[j]) rep.unmatched_est.push_back(j);
    return rep;
}

/// All ordered-pair lines (Delta_{d2} + ell Delta_{d1}) of Algorithm 3's
/// double loop, for the redundant q(q-1)-line scheme.
inline std::vector<std::pair<SamplingLine, std::pair<int, int>>> full_pair_lines(
    const DirectionBasis& basis, int n) {
    basis.validate();
    std::vector<std::pair<SamplingLine, std::pair<int, int>>> out;
    for (int d1 = 1; d1 <= basis.q; ++d1) {
        for (int d2 = 1; d2 <= basis.q; ++d2) {
            if (d1 == d2) continue;
            SamplingLine l;
            l.offset = basis.rows[static_cast<std::size_t>(d2 - 1)];
            l.direction = basis.rows[static_cast<std::size_t>(d1 - 1)];
            l.n = n;
            out.emplace_back(l, std::make_pair(d1, d2));
        }
    }
    return out;
}

/// Redundant-pair recovery: assembles through the direction-1 anchor exactly
/// like recover_anchored, and additionally counts pairings among the
/// remaining (d1, d2) pairs that disagree with the anchored assignment.
inline AssembledSources recover_full_pairs(
    const std::vector<std::pair<SampleLine, std::pair<int, int>>>& lines,
    const DirectionBasis& basis, const KernelWeights& weights, const RecoveryParams& params,
    std::size_t* consistency_mismatches = nullptr, std::size_t grid_size = 0) {
    basis.validate();
    if (basis.q < 2) throw std::invalid_argument("recover_full_pairs: needs q >= 2");

    std::vector<SampleLine> anchored(static_cast<std::size_t>(basis.q));
    std::vector<bool> have(static_cast<std::size_t>(basis.q), false);
    std::vector<std::pair<DirectionalEstimate, DirectionalEstimate>> extra_pairs;

    std::vector<DirectionalEstimate> by_roles;
    for (const auto& [line, roles] : lines) {
        const auto est = recover_direction_pair(line, weights, params,
                                                roles.first, roles.second, grid_size);
        by_roles.push_back(est);
        if (roles.first == 1 && roles.second == 2) {
            anchored[0] = line;
            have[0] = true;
        } else if (roles.second == 1) {
            anchored[static_cast<std::size_t>(roles.first - 1)] = line;
            have[static_cast<std::size_t>(roles.first - 1)] = true;
        }
    }
    for (bool h : have)
        if (!h) throw std::invalid_argument("recover_full_pairs: anchored line subset missing");

    const AssembledSources assembled =
        recover_anchored(anchored, basis, weights, params, grid_size);

    if (consistency_mismatches != nullptr) {
        *consistency_mismatches = 0;
        // For every ordered pair with d1 >= 2 and d2 >= 2, pair the two lines
        // and count matches whose coordinates disagree with some assembled
        // source by more than the coarse tolerance.
        for (std::size_t a = 0; a < by_roles.size(); ++a) {
            const auto& ea = by_roles[a];
            if (ea.accurate_dir == 1 || ea.coarse_dir == 1) continue;
            if (ea.accurate_dir > ea.coarse_dir) continue;  // one pass per unordered pair
            for (std::size_t b = 0; b < by_roles.size(); ++b) {
                const auto& eb = by_roles[b];
                if (eb.accurate_dir != ea.coarse_dir || eb.coarse_dir != ea.accurate_dir) continue;
                if (ea.entries.empty() || eb.entries.empty()) continue;
                const PairingResult pr = pair_estimates(ea, eb);
                for (const auto& p : pr.pairs) {
                    bool consistent = false;
                    for (const auto& w : assembled.w) {
                        const auto proj = basis.project(w);
                        const double ca = proj[static_cast<std::size_t>(ea.accurate_dir - 1)];
                        const double cb = proj[static_cast<std::size_t>(eb.accurate_dir - 1)];
                        if (circular_distance(wrap_to_pi(ca), p.coord_a) < 1e-6 + p.pairing_distance &&
                            circular_distance(wrap_to_pi(cb), p.coord_b) < 1e-6 + p.pairing_distance) {
                            consistent = true;
                            break;
                        }
                    }
                    if (!consistent) ++(*consistency_mismatches);
                }
            }
        }
    }
    return assembled;
}

}  // namespace expsum
