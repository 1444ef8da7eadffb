#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "expsum/common.hpp"
#include "expsum/model.hpp"
#include "expsum/multidim.hpp"

namespace expsum {

/// Synthetic-scene request. Sources are drawn so that every projected
/// coordinate <Delta_d, w> lies in (-pi + margin, pi - margin) and pairwise
/// circular separations per coordinate respect the floor; a floor of 0
/// disables the separation constraint (dense scenes). Amplitudes are real
/// positive, uniform in [amp_min, amp_max].
struct SceneSpec {
    int count = 1;
    double amp_min = 1.0;
    double amp_max = 1.0;
    double separation_floor = 0.0;
    double margin = 0.1;
    std::size_t max_attempts_per_point = 10000;

    void validate() const {
        if (count < 1) throw std::invalid_argument("SceneSpec: count must be >= 1");
        if (!(amp_min > 0.0) || amp_max < amp_min)
            throw std::invalid_argument("SceneSpec: need 0 < amp_min <= amp_max");
        if (separation_floor < 0.0 || margin < 0.0 || margin >= pi)
            throw std::invalid_argument("SceneSpec: bad separation floor or margin");
    }
};

/// Draw a random scene in the basis cell: projected coordinates are sampled
/// uniformly in the box and mapped back through the basis, so the result
/// never violates the (-pi, pi] projection precondition of the assembly
/// step. Throws when the separation floor cannot be met.
inline PointSourceModel random_scene(const SceneSpec& spec, const DirectionBasis& basis,
                                     std::uint64_t seed) {
    spec.validate();
    basis.validate();
    const int q = basis.q;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-pi + spec.margin, pi - spec.margin);
    std::uniform_real_distribution<double> amp(spec.amp_min, spec.amp_max);

    std::vector<std::vector<double>> accepted;  // projected coordinates b
    for (int k = 0; k < spec.count; ++k) {
        bool placed = false;
        for (std::size_t attempt = 0; attempt < spec.max_attempts_per_point; ++attempt) {
            std::vector<double> b(static_cast<std::size_t>(q));
            for (auto& c : b) c = coord(rng);
            bool ok = true;
            if (spec.separation_floor > 0.0) {
                for (const auto& other : accepted) {
                    for (int d = 0; d < q; ++d) {
                        if (circular_distance(b[static_cast<std::size_t>(d)],
                                              other[static_cast<std::size_t>(d)]) <
                            spec.separation_floor) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
            }
            if (ok) {
                accepted.push_back(std::move(b));
                placed = true;
                break;
            }
        }
        if (!placed)
            throw std::runtime_error(
                "random_scene: could not place a source under the separation floor; "
                "reduce count or floor");
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis.matrix());
    PointSourceModel model;
    model.q = q;
    for (const auto& b : accepted) {
        Eigen::VectorXd rhs(q);
        for (int d = 0; d < q; ++d) rhs(d) = b[static_cast<std::size_t>(d)];
        const Eigen::VectorXd w = lu.solve(rhs);
        Source s;
        s.amplitude = {amp(rng), 0.0};
        s.frequency.assign(w.data(), w.data() + q);
        model.sources.push_back(std::move(s));
    }
    return model;
}

/// Identity direction basis of dimension q.
inline DirectionBasis identity_basis(int q) {
    DirectionBasis b;
    b.q = q;
    b.rows.assign(static_cast<std::size_t>(q), std::vector<double>(static_cast<std::size_t>(q), 0.0));
    for (int d = 0; d < q; ++d) b.rows[static_cast<std::size_t>(d)][static_cast<std::size_t>(d)] = 1.0;
    return b;
}

}  // namespace expsum
