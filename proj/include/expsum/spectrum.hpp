#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "expsum/common.hpp"
#include "expsum/fft.hpp"
#include "expsum/filter.hpp"
#include "expsum/model.hpp"

namespace expsum {

/// sigma_n evaluated on the uniform grid x_j = -pi + 2*pi*j/N, j = 0..N-1.
/// Keeps the sample line and kernel weights it was built from so that peak
/// amplitudes can later be re-evaluated pointwise at off-grid angles.
struct SpectrumGrid {
    KernelWeights weights;
    SampleLine samples;
    std::size_t grid_size = 0;
    std::vector<std::complex<double>> values;

    double angle(std::size_t j) const {
        return -pi + two_pi * static_cast<double>(j) / static_cast<double>(grid_size);
    }
    double step() const { return two_pi / static_cast<double>(grid_size); }
    int degree() const { return weights.n; }
};

/// Smallest power of two >= 16 n. Satisfies the N >= 4*pi*n mesh condition
/// with headroom and makes grid-limited peak positions accurate to 2*pi/N.
inline std::size_t default_grid_size(int n) {
    return std::bit_ceil(static_cast<std::size_t>(16) * static_cast<std::size_t>(n));
}

/// Evaluate sigma_n(x_j) = hbar_n sum_{|ell|<n} H(|ell|/n) mu~(ell) e^{i ell x_j}
/// on the N-point grid via one zero-padded inverse DFT: coefficient ell goes
/// to bin ell mod N, and the result is rotated by N/2 onto the [-pi, pi)
/// grid. grid_size = 0 picks default_grid_size(n).
inline SpectrumGrid eval_sigma_grid(const SampleLine& samples, const KernelWeights& weights,
                                    std::size_t grid_size = 0) {
    if (weights.n != samples.line.n)
        throw std::invalid_argument("eval_sigma_grid: kernel degree does not match sample line");
    const int n = weights.n;
    const std::size_t N = grid_size == 0 ? default_grid_size(n) : grid_size;
    if (!is_power_of_two(N)) throw std::invalid_argument("eval_sigma_grid: grid size must be a power of two");
    if (static_cast<double>(N) < std::ceil(4.0 * pi * n))
        throw std::invalid_argument("eval_sigma_grid: grid size below the 4*pi*n mesh requirement");

    std::vector<std::complex<double>> bins(N, {0.0, 0.0});
    for (int ell = -(n - 1); ell <= n - 1; ++ell) {
        const std::size_t bin = static_cast<std::size_t>((ell % static_cast<int>(N) + static_cast<int>(N)) % static_cast<int>(N));
        bins[bin] += weights.hbar * weights.weight(ell) * samples.at(ell);
    }
    fft_radix2(bins, +1);  // g[j] = sum_ell c_ell e^{2pi i ell j / N}

    SpectrumGrid grid;
    grid.weights = weights;
    grid.samples = samples;
    grid.grid_size = N;
    grid.values.resize(N);
    // x_j = 2*pi*(j - N/2)/N, so values[j] = g[(j + N/2) mod N]
    const std::size_t half = N / 2;
    for (std::size_t j = 0; j < N; ++j) grid.values[j] = bins[(j + half) & (N - 1)];
    return grid;
}

/// Direct O(n) pointwise evaluation; the oracle for the FFT path.
inline std::complex<double> eval_sigma_point(const SampleLine& samples,
                                             const KernelWeights& weights, double x) {
    if (weights.n != samples.line.n)
        throw std::invalid_argument("eval_sigma_point: kernel degree does not match sample line");
    std::complex<double> acc{0.0, 0.0};
    for (int ell = -(weights.n - 1); ell <= weights.n - 1; ++ell)
        acc += weights.weight(ell) * samples.at(ell) * std::polar(1.0, ell * x);
    return weights.hbar * acc;
}

/// Pure-noise operator E_n: per trial, draw fresh complex Gaussian noise with
/// parameter V, evaluate its spectrum on the grid, and record max_j |E_n(x_j)|.
/// Trial t uses the derived seed mix_seed(seed, t), so results are independent
/// of execution order.
inline std::vector<double> noise_spectrum_max(const KernelWeights& weights, double noise_sigma,
                                              std::uint64_t seed, int trials,
                                              std::size_t grid_size = 0) {
    if (trials < 1) throw std::invalid_argument("noise_spectrum_max: trials must be >= 1");
    if (noise_sigma < 0.0) throw std::invalid_argument("noise_spectrum_max: sigma must be nonnegative");

    const int n = weights.n;
    SamplingLine line;
    line.offset = {0.0};
    line.direction = {1.0};
    line.n = n;

    std::vector<double> maxima(static_cast<std::size_t>(trials), 0.0);
    if (noise_sigma == 0.0) return maxima;

    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
        std::normal_distribution<double> g(0.0, noise_sigma);
        SampleLine noise;
        noise.line = line;
        noise.noise_sigma = noise_sigma;
        noise.values.resize(line.sample_count());
        for (auto& v : noise.values) {
            const double re = g(rng);
            const double im = g(rng);
            v = {re, im};
        }
        const SpectrumGrid grid = eval_sigma_grid(noise, weights, grid_size);
        double m = 0.0;
        for (const auto& v : grid.values) m = std::max(m, std::abs(v));
        maxima[static_cast<std::size_t>(t)] = m;
    }
    return maxima;
}

}  // namespace expsum
