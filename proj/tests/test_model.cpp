#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "expsum/expsum.hpp"
#include "test_util.hpp"

using namespace expsum;

TEST_CASE("exact moments of the three-tone model", "[model]") {
    const auto model = testutil::three_tone_model();
    const auto line = testutil::unit_line(8);
    const auto mom = exact_moments(model, line);
    REQUIRE(mom.size() == 15);

    // ell = 0: sum of amplitudes
    CHECK(std::abs(mom[7] - std::complex<double>(2.0, 0.0)) <= 1e-12);

    // ell = 1: e^{3i} - 2 e^{i} + 3 e^{-2i}
    const std::complex<double> expected =
        std::polar(1.0, 3.0) - 2.0 * std::polar(1.0, 1.0) + 3.0 * std::polar(1.0, -2.0);
    CHECK(std::abs(mom[8] - expected) <= 1e-12);

    // single source, w = 0: all values 1
    PointSourceModel flat;
    flat.q = 3;
    flat.sources = {{{1.0, 0.0}, {0.0, 0.0, 0.0}}};
    SamplingLine l3;
    l3.offset = {0.3, -0.2, 0.1};
    l3.direction = {1.0, 2.0, -1.0};
    l3.n = 5;
    for (const auto& v : exact_moments(flat, l3))
        CHECK(std::abs(v - std::complex<double>(1.0, 0.0)) <= 1e-12);

    CHECK_THROWS_AS(exact_moments(model, l3), std::invalid_argument);
    CHECK_THROWS_AS(exact_moments(flat, testutil::unit_line(4)), std::invalid_argument);
}

TEST_CASE("conjugate-moment relation for real amplitudes", "[model]") {
    for (const auto& [model, line] : {std::pair{testutil::three_tone_model(), testutil::unit_line(64)},
                                      std::pair{testutil::twelve_point_model(), [] {
                                                    SamplingLine l;
                                                    l.offset = {0.0, 0.0};
                                                    l.direction = {1.38, 4.14};
                                                    l.n = 64;
                                                    return l;
                                                }()}}) {
        const auto mom = exact_moments(model, line);
        const int n = line.n;
        for (int ell = 0; ell <= n - 1; ++ell) {
            const auto a = mom[static_cast<std::size_t>(ell + n - 1)];
            const auto b = mom[static_cast<std::size_t>(-ell + n - 1)];
            CHECK(std::abs(b - std::conj(a)) <= 1e-12);
        }
    }
}

TEST_CASE("moments are linear in the model", "[model]") {
    const auto line = testutil::unit_line(32);
    PointSourceModel a;
    a.q = 1;
    a.sources = {{{1.5, 0.25}, {0.7}}, {{-0.5, 1.0}, {-2.1}}};
    PointSourceModel b;
    b.q = 1;
    b.sources = {{{0.0, 2.0}, {1.9}}};
    PointSourceModel both = a;
    both.sources.insert(both.sources.end(), b.sources.begin(), b.sources.end());

    const auto ma = exact_moments(a, line);
    const auto mb = exact_moments(b, line);
    const auto mc = exact_moments(both, line);
    for (std::size_t i = 0; i < mc.size(); ++i) CHECK(std::abs(mc[i] - (ma[i] + mb[i])) <= 1e-12);
}

TEST_CASE("model summary quantities", "[model]") {
    const auto model = testutil::three_tone_model();
    CHECK(model.total_mass() == Catch::Approx(6.0));
    CHECK(model.min_modulus() == Catch::Approx(1.0));

    PointSourceModel bad;
    bad.q = 1;
    bad.sources = {{{0.0, 0.0}, {1.0}}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("noise calibration", "[model]") {
    // |mu|^2 = 2 per sample -> P = 2; at 0 dB: E|eps|^2 = 2, V = 1
    std::vector<std::complex<double>> mom(11, {1.0, 1.0});
    CHECK(calibrate_sigma(mom, 0.0) == Catch::Approx(1.0));
    CHECK(calibrate_sigma(mom, 300.0) <= 1e-10);

    std::vector<std::complex<double>> unit(5, {1.0, 0.0});
    CHECK(calibrate_sigma(unit, -10.0) == Catch::Approx(std::sqrt(5.0)));

    std::vector<std::complex<double>> zeros(5, {0.0, 0.0});
    CHECK_THROWS_AS(calibrate_sigma(zeros, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_sigma(std::vector<std::complex<double>>{}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("noise injection determinism and moments", "[model]") {
    const auto model = testutil::three_tone_model();
    const auto line = testutil::unit_line(16);
    const auto mom = exact_moments(model, line);

    NoiseSpec zero;
    zero.sigma = 0.0;
    zero.seed = 1;
    const auto clean = add_noise(mom, line, zero);
    for (std::size_t i = 0; i < mom.size(); ++i) CHECK(clean.values[i] == mom[i]);

    NoiseSpec spec;
    spec.sigma = 0.5;
    spec.seed = 99;
    const auto a = add_noise(mom, line, spec);
    const auto b = add_noise(mom, line, spec);
    for (std::size_t i = 0; i < mom.size(); ++i) CHECK(a.values[i] == b.values[i]);
    spec.seed = 100;
    const auto c = add_noise(mom, line, spec);
    bool any_diff = false;
    for (std::size_t i = 0; i < mom.size(); ++i)
        if (a.values[i] != c.values[i]) any_diff = true;
    CHECK(any_diff);

    NoiseSpec bad;
    bad.sigma = -1.0;
    CHECK_THROWS_AS(add_noise(mom, line, bad), std::invalid_argument);
    NoiseSpec none;
    CHECK_THROWS_AS(add_noise(mom, line, none), std::invalid_argument);
    NoiseSpec overspecified;
    overspecified.sigma = 1.0;
    overspecified.snr_db = 0.0;
    CHECK_THROWS_AS(add_noise(mom, line, overspecified), std::invalid_argument);
}

TEST_CASE("noise second moment matches the requested level", "[model]") {
    SamplingLine line = testutil::unit_line(50000);
    std::vector<std::complex<double>> zeros(line.sample_count(), {0.0, 0.0});
    // zero signal: adding noise to zeros exposes the raw draws (~1e5 of them)
    for (auto family : {NoiseFamily::complex_gaussian, NoiseFamily::bounded_uniform}) {
        NoiseSpec spec;
        spec.family = family;
        spec.sigma = 1.0;
        spec.seed = 2024;
        const auto noisy = add_noise(zeros, line, spec);
        double p = 0.0;
        for (const auto& v : noisy.values) p += std::norm(v);
        p /= static_cast<double>(noisy.values.size());
        CHECK(p >= 1.9);
        CHECK(p <= 2.1);
    }
}

TEST_CASE("sub-Gaussian tail bound", "[model]") {
    const double v = 0.8;
    SamplingLine line = testutil::unit_line(500000);  // 999999 draws
    std::vector<std::complex<double>> zeros(line.sample_count(), {0.0, 0.0});
    for (auto family : {NoiseFamily::complex_gaussian, NoiseFamily::bounded_uniform}) {
        NoiseSpec spec;
        spec.family = family;
        spec.sigma = v;
        spec.seed = 77;
        const auto noisy = add_noise(zeros, line, spec);
        for (double t : {2.0 * v, 3.0 * v}) {
            std::size_t exceed = 0;
            for (const auto& x : noisy.values)
                if (std::abs(x) > t) ++exceed;
            const double p_hat = static_cast<double>(exceed) / noisy.values.size();
            const double bound = 4.0 * std::exp(-t * t / (4.0 * v * v));
            const double mc_slack = 3.0 * std::sqrt(bound / noisy.values.size()) + 1e-6;
            CHECK(p_hat <= bound + mc_slack);
        }
    }
}

TEST_CASE("seed mixing separates trials", "[model]") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(42, 7) == mix_seed(42, 7));
}
