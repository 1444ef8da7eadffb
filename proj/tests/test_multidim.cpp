#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "expsum/expsum.hpp"
#include "test_util.hpp"

using namespace expsum;

namespace {

const LowPassFilter kFilter;

SampleLine line_samples(const PointSourceModel& model, const std::vector<double>& offset,
                        const std::vector<double>& direction, int n, double sigma = 0.0,
                        std::uint64_t seed = 0) {
    SamplingLine l;
    l.offset = offset;
    l.direction = direction;
    l.n = n;
    if (sigma == 0.0) return sample_line_exact(model, l);
    NoiseSpec spec;
    spec.sigma = sigma;
    spec.seed = seed;
    return add_noise(exact_moments(model, l), l, spec);
}

std::vector<SampleLine> anchored_samples(const PointSourceModel& model,
                                         const DirectionBasis& basis, int n, double sigma = 0.0,
                                         std::uint64_t seed = 0) {
    std::vector<SampleLine> out;
    std::size_t idx = 0;
    for (const auto& line : anchored_lines(basis, n)) {
        if (sigma == 0.0) {
            out.push_back(sample_line_exact(model, line));
        } else {
            NoiseSpec spec;
            spec.sigma = sigma;
            spec.seed = mix_seed(seed, idx);
            out.push_back(add_noise(exact_moments(model, line), line, spec));
        }
        ++idx;
    }
    return out;
}

/// Brute-force optimal assignment between accurate coords of `a` and coarse
/// coords of `b` minimizing total circular distance; returns b-indices in
/// a-order.
std::vector<std::size_t> optimal_assignment(const DirectionalEstimate& a,
                                            const DirectionalEstimate& b) {
    const std::size_t k = a.entries.size();
    std::vector<std::size_t> perm(k), best(k);
    std::iota(perm.begin(), perm.end(), 0);
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            cost += circular_distance(a.entries[i].accurate_coord, b.entries[perm[i]].coarse_coord);
        if (cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

TEST_CASE("direction basis validation", "[multidim]") {
    auto basis = testutil::twelve_point_basis();
    CHECK_NOTHROW(basis.validate());
    CHECK(basis.condition_number() > 1.0);

    DirectionBasis singular;
    singular.q = 2;
    singular.rows = {{1.0, 2.0}, {2.0, 4.0}};
    CHECK_THROWS_AS(singular.validate(), degenerate_error);

    DirectionBasis ragged;
    ragged.q = 2;
    ragged.rows = {{1.0, 0.0}};
    CHECK_THROWS_AS(ragged.validate(), std::invalid_argument);
}

TEST_CASE("per-direction recovery on the twelve-point data", "[multidim]") {
    const int n = 1024;
    const auto model = testutil::twelve_point_model();
    const auto basis = testutil::twelve_point_basis();
    const auto kw = make_kernel_weights(kFilter, n);

    const auto samples = line_samples(model, basis.rows[1], basis.rows[0], n);
    RecoveryParams params;
    params.m_min = 50.0;
    params.eta = 0.08;  // just under the direction-1 minimal separation
    const auto est = recover_direction_pair(samples, kw, params, 1, 2);
    REQUIRE(est.entries.size() == 12);

    const std::size_t grid_n = default_grid_size(n);
    for (const auto& src : model.sources) {
        const double target = wrap_to_pi(basis.project(src.frequency)[0]);
        double best = two_pi;
        for (const auto& e : est.entries)
            best = std::min(best, circular_distance(e.accurate_coord, target));
        CHECK(best <= two_pi / grid_n);
    }
}

TEST_CASE("coarse coordinate reads the offset phase", "[multidim]") {
    const int n = 512;
    const auto basis = testutil::twelve_point_basis();
    const auto kw = make_kernel_weights(kFilter, n);

    PointSourceModel one;
    one.q = 2;
    one.sources = {{{2.0, 0.0}, {0.21, -0.13}}};
    const auto samples = line_samples(one, basis.rows[1], basis.rows[0], n);
    RecoveryParams params;
    params.m_min = 2.0;
    params.eta = two_pi;
    const auto est = recover_direction_pair(samples, kw, params, 1, 2);
    REQUIRE(est.entries.size() == 1);
    const double expected = wrap_to_pi(basis.project(one.sources[0].frequency)[1]);
    CHECK(circular_distance(est.entries[0].coarse_coord, expected) <= 0.05);

    // complex amplitude |A| e^{i phi}: coarse readout shifts by exactly -phi
    const double phi = 0.8;
    PointSourceModel rotated = one;
    rotated.sources[0].amplitude = std::polar(2.0, phi);
    const auto samples_rot = line_samples(rotated, basis.rows[1], basis.rows[0], n);
    const auto est_rot = recover_direction_pair(samples_rot, kw, params, 1, 2);
    REQUIRE(est_rot.entries.size() == 1);
    const double shift = wrap_to_pi(est.entries[0].coarse_coord - est_rot.entries[0].coarse_coord);
    CHECK(std::abs(shift - phi) <= 1e-6);
}

TEST_CASE("pairing rules", "[multidim]") {
    DirectionalEstimate a;
    a.accurate_dir = 1;
    a.coarse_dir = 2;
    DirectionalEstimate b;
    b.accurate_dir = 2;
    b.coarse_dir = 1;

    // K = 1: always paired, regardless of coarse error
    a.entries = {{0.3, 1.0, 5.0}};
    b.entries = {{1.0, 2.9, 5.0}};
    const auto single = pair_estimates(a, b);
    REQUIRE(single.pairs.size() == 1);
    CHECK(single.pairs[0].coord_a == 0.3);
    CHECK(single.pairs[0].coord_b == 1.0);
    CHECK(single.pairs[0].amp == 5.0);

    // 3 vs 2: two pairs, one leftover flagged
    a.entries = {{-2.0, 0.0, 1.0}, {0.5, 0.0, 2.0}, {2.5, 0.0, 3.0}};
    b.entries = {{1.5, 0.52, 9.0}, {-1.0, -1.97, 8.0}};
    const auto uneven = pair_estimates(a, b);
    CHECK(uneven.pairs.size() == 2);
    REQUIRE(uneven.unpaired_a.size() == 1);
    CHECK(uneven.unpaired_b.empty());
    CHECK(uneven.unpaired_a[0] == 2);  // 2.5 has no nearby coarse partner

    DirectionalEstimate empty;
    empty.accurate_dir = 2;
    empty.coarse_dir = 1;
    CHECK_THROWS_AS(pair_estimates(a, empty), std::invalid_argument);

    DirectionalEstimate wrong_role = b;
    wrong_role.coarse_dir = 3;
    CHECK_THROWS_AS(pair_estimates(a, wrong_role), std::invalid_argument);
}

TEST_CASE("greedy pairing equals brute-force assignment on clean instances", "[multidim]") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> ksel(1, 6);
    std::uniform_real_distribution<double> noise(-0.02, 0.02);
    for (int inst = 0; inst < 100; ++inst) {
        const int k = ksel(rng);
        std::vector<double> coords;
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        while (static_cast<int>(coords.size()) < k) {
            const double c = u(rng);
            bool ok = true;
            for (double o : coords)
                if (circular_distance(c, o) < 0.4) ok = false;
            if (ok) coords.push_back(c);
        }
        DirectionalEstimate a;
        a.accurate_dir = 1;
        a.coarse_dir = 2;
        DirectionalEstimate b;
        b.accurate_dir = 2;
        b.coarse_dir = 1;
        std::vector<std::size_t> shuffle(static_cast<std::size_t>(k));
        std::iota(shuffle.begin(), shuffle.end(), 0);
        std::shuffle(shuffle.begin(), shuffle.end(), rng);
        for (int i = 0; i < k; ++i) {
            a.entries.push_back({coords[static_cast<std::size_t>(i)], 0.0, 1.0});
            b.entries.push_back(
                {u(rng), wrap_to_pi(coords[shuffle[static_cast<std::size_t>(i)]] + noise(rng)), 1.0});
        }

        const auto greedy = pair_estimates(a, b);
        const auto optimal = optimal_assignment(a, b);
        REQUIRE(greedy.pairs.size() == static_cast<std::size_t>(k));
        for (const auto& p : greedy.pairs) CHECK(shuffle[p.index_b] == p.index_a);
        for (const auto& p : greedy.pairs) CHECK(p.index_b == optimal[p.index_a]);
    }
}

TEST_CASE("assembly solves the basis system", "[multidim]") {
    DirectionBasis identity = identity_basis(2);
    const auto out = assemble_full({{{0.5, -0.3}, 2.0}}, identity);
    REQUIRE(out.count() == 1);
    CHECK(out.w[0][0] == Catch::Approx(0.5));
    CHECK(out.w[0][1] == Catch::Approx(-0.3));
    CHECK(out.amp[0] == 2.0);

    DirectionBasis singular;
    singular.q = 2;
    singular.rows = {{1.0, 1.0}, {2.0, 2.0}};
    CHECK_THROWS_AS(assemble_full({{{0.1, 0.2}, 1.0}}, singular), degenerate_error);
}

TEST_CASE("folding into the basis cell", "[multidim]") {
    const auto basis = testutil::twelve_point_basis();
    // no wrap: folding is the identity
    const std::vector<double> small = {0.05, -0.02};
    const auto folded = fold_into_basis_cell(basis, small);
    CHECK(folded[0] == Catch::Approx(small[0]).margin(1e-12));
    CHECK(folded[1] == Catch::Approx(small[1]).margin(1e-12));

    // the twelve-point scene wraps in both directions; folding must change it
    const auto model = testutil::twelve_point_model();
    const auto folded_model = fold_into_basis_cell(basis, model);
    double max_shift = 0.0;
    for (std::size_t k = 0; k < model.sources.size(); ++k) {
        for (int d = 0; d < 2; ++d)
            max_shift = std::max(max_shift,
                                 std::abs(model.sources[k].frequency[static_cast<std::size_t>(d)] -
                                          folded_model.sources[k].frequency[static_cast<std::size_t>(d)]));
        const auto pf = basis.project(folded_model.sources[k].frequency);
        const auto pt = basis.project(model.sources[k].frequency);
        for (int d = 0; d < 2; ++d) {
            CHECK(pf[static_cast<std::size_t>(d)] <= pi + 1e-9);
            CHECK(pf[static_cast<std::size_t>(d)] > -pi - 1e-9);
            CHECK(circular_distance(pf[static_cast<std::size_t>(d)],
                                    pt[static_cast<std::size_t>(d)]) <= 1e-9);
        }
    }
    CHECK(max_shift > 0.5);
}

TEST_CASE("twelve-point end-to-end noiseless", "[multidim]") {
    const int n = 1024;
    const auto model = testutil::twelve_point_model();
    const auto basis = testutil::twelve_point_basis();
    const auto kw = make_kernel_weights(kFilter, n);

    RecoveryParams params;
    params.m_min = 50.0;
    params.eta = 0.02;  // direction-2 separations reach down to ~0.021
    const auto assembled = recover_anchored(anchored_samples(model, basis, n), basis, kw, params);
    REQUIRE(assembled.count() == 12);

    const auto folded = fold_into_basis_cell(basis, model);
    double worst = 0.0;
    for (const auto& src : folded.sources) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& w : assembled.w) {
            double worst_coord = 0.0;
            for (int c = 0; c < 2; ++c)
                worst_coord = std::max(worst_coord,
                                       std::abs(w[static_cast<std::size_t>(c)] -
                                                src.frequency[static_cast<std::size_t>(c)]));
            best = std::min(best, worst_coord);
        }
        worst = std::max(worst, best);
    }
    CHECK(worst <= 1e-3);

    const auto report = match_points(folded, assembled, 0.05);
    CHECK(report.matched == 12);
    CHECK(report.rmse <= 1e-3);
}

TEST_CASE("match report rules", "[multidim]") {
    PointSourceModel truth;
    truth.q = 2;
    truth.sources = {{{1.0, 0.0}, {0.1, 0.2}}, {{1.0, 0.0}, {-0.4, 0.6}}};

    AssembledSources exact;
    exact.w = {{0.1, 0.2}, {-0.4, 0.6}};
    exact.amp = {1.0, 1.0};
    exact.pairing_distance = {0.0, 0.0};
    const auto perfect = match_points(truth, exact, 0.05);
    CHECK(perfect.matched == 2);
    CHECK(perfect.rmse == 0.0);
    CHECK(perfect.unmatched_truth.empty());
    CHECK(perfect.unmatched_est.empty());

    AssembledSources displaced = exact;
    displaced.w[1][0] += 0.1;  // 2r away at r = 0.05
    const auto partial = match_points(truth, displaced, 0.05);
    CHECK(partial.matched == 1);
    REQUIRE(partial.unmatched_truth.size() == 1);
    CHECK(partial.unmatched_truth[0] == 1);

    CHECK_THROWS_AS(match_points(truth, exact, 0.0), std::invalid_argument);
}

TEST_CASE("basis row permutation leaves assembled sources unchanged", "[multidim]") {
    DirectionBasis basis;
    basis.q = 3;
    basis.rows = {{1.0, 0.2, -0.1}, {0.1, 1.1, 0.3}, {-0.2, 0.4, 0.9}};
    DirectionBasis permuted;
    permuted.q = 3;
    permuted.rows = {basis.rows[1], basis.rows[2], basis.rows[0]};

    std::mt19937_64 rng(4040);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<CoordinateTuple> tuples, permuted_tuples;
    for (int k = 0; k < 5; ++k) {
        CoordinateTuple t;
        t.coords = {u(rng), u(rng), u(rng)};
        t.amp = 1.0 + k;
        tuples.push_back(t);
        CoordinateTuple pt;
        pt.coords = {t.coords[1], t.coords[2], t.coords[0]};
        pt.amp = t.amp;
        permuted_tuples.push_back(pt);
    }
    const auto a = assemble_full(tuples, basis);
    const auto b = assemble_full(permuted_tuples, permuted);
    REQUIRE(a.count() == b.count());
    for (std::size_t i = 0; i < a.count(); ++i)
        for (int d = 0; d < 3; ++d)
            CHECK(a.w[i][static_cast<std::size_t>(d)] ==
                  Catch::Approx(b.w[i][static_cast<std::size_t>(d)]).margin(1e-9));
}

TEST_CASE("noiseless end-to-end exactness on random scenes", "[multidim]") {
    const int n = 512;
    const std::size_t grid_n = default_grid_size(n);
    for (std::uint64_t seed : {4ULL, 5ULL, 6ULL}) {
        for (int q : {2, 3}) {
            DirectionBasis basis =
                q == 2 ? testutil::twelve_point_basis() : testutil::three_d_basis();
            SceneSpec spec;
            spec.count = 6;
            spec.separation_floor = 8.0 * pi / n;
            const auto model = random_scene(spec, basis, seed);

            const auto kw = make_kernel_weights(kFilter, n);
            RecoveryParams params;
            params.m_min = model.min_modulus();
            params.eta = spec.separation_floor;
            const auto assembled =
                recover_anchored(anchored_samples(model, basis, n), basis, kw, params);
            REQUIRE(assembled.count() == 6);

            const double per_coord_bound =
                4.0 * pi / static_cast<double>(grid_n) * basis.condition_number();
            for (const auto& src : model.sources) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& w : assembled.w) {
                    double worst_coord = 0.0;
                    for (int d = 0; d < q; ++d)
                        worst_coord = std::max(
                            worst_coord, std::abs(w[static_cast<std::size_t>(d)] -
                                                  src.frequency[static_cast<std::size_t>(d)]));
                    best = std::min(best, worst_coord);
                }
                CHECK(best <= per_coord_bound);
            }
        }
    }
}

TEST_CASE("anchored scheme sample budget", "[multidim]") {
    for (int q : {1, 2, 3}) {
        DirectionBasis basis = identity_basis(q);
        const int n = 128;
        const auto lines = anchored_lines(basis, n);
        CHECK(lines.size() == static_cast<std::size_t>(q));
        std::size_t total = 0;
        for (const auto& l : lines) total += l.sample_count();
        CHECK(total == static_cast<std::size_t>(q) * (2 * n - 1));
        if (q == 3) CHECK(total == static_cast<std::size_t>(6 * n - 3));
    }
}

TEST_CASE("redundant pair scheme agrees with the anchored one", "[multidim]") {
    const int n = 256;
    const auto basis = testutil::three_d_basis();
    SceneSpec spec;
    spec.count = 4;
    spec.separation_floor = 8.0 * pi / n;
    const auto model = random_scene(spec, basis, 1234);

    const auto kw = make_kernel_weights(kFilter, n);
    RecoveryParams params;
    params.m_min = 1.0;
    params.eta = spec.separation_floor;

    std::vector<std::pair<SampleLine, std::pair<int, int>>> lines;
    for (const auto& [line, roles] : full_pair_lines(basis, n))
        lines.emplace_back(sample_line_exact(model, line), roles);
    CHECK(lines.size() == 6);  // q(q-1) ordered pairs

    std::size_t mismatches = 123;
    const auto full = recover_full_pairs(lines, basis, kw, params, &mismatches);
    CHECK(full.count() == 4);
    CHECK(mismatches == 0);

    const auto anchored = recover_anchored(anchored_samples(model, basis, n), basis, kw, params);
    REQUIRE(anchored.count() == full.count());
    auto sorted_a = anchored.w;
    auto sorted_f = full.w;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_f.begin(), sorted_f.end());
    for (std::size_t i = 0; i < sorted_a.size(); ++i)
        for (int d = 0; d < 3; ++d)
            CHECK(sorted_a[i][static_cast<std::size_t>(d)] ==
                  Catch::Approx(sorted_f[i][static_cast<std::size_t>(d)]).margin(1e-12));
}

TEST_CASE("scene generator honors the separation floor", "[multidim]") {
    const auto basis = testutil::three_d_basis();
    SceneSpec spec;
    spec.count = 29;
    spec.separation_floor = 8.0 * pi / 417.0;
    const auto model = random_scene(spec, basis, 2468);
    REQUIRE(model.sources.size() == 29);
    for (std::size_t a = 0; a < model.sources.size(); ++a) {
        const auto pa = basis.project(model.sources[a].frequency);
        for (int d = 0; d < 3; ++d) {
            CHECK(pa[static_cast<std::size_t>(d)] < pi - 0.1 + 1e-9);
            CHECK(pa[static_cast<std::size_t>(d)] > -pi + 0.1 - 1e-9);
        }
        for (std::size_t b = a + 1; b < model.sources.size(); ++b) {
            const auto pb = basis.project(model.sources[b].frequency);
            for (int d = 0; d < 3; ++d)
                CHECK(circular_distance(pa[static_cast<std::size_t>(d)],
                                        pb[static_cast<std::size_t>(d)]) >=
                      spec.separation_floor - 1e-12);
        }
    }

    SceneSpec infeasible;
    infeasible.count = 100;
    infeasible.separation_floor = 0.1;
    infeasible.max_attempts_per_point = 50;
    CHECK_THROWS_AS(random_scene(infeasible, basis, 1), std::runtime_error);
}
