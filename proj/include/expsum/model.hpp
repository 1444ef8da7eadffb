#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "expsum/common.hpp"

namespace expsum {

struct Source {
    std::complex<double> amplitude;
    std::vector<double> frequency;  ///< w_k in R^q, stored unwrapped
};

/// Ground-truth exponential model: K point sources with complex amplitudes
/// A_k and frequency vectors w_k. The observable along a sampling line is
///
///     mu_hat(offset + ell*direction) = sum_k A_k e^{-i<offset,w_k>} e^{-i ell <direction,w_k>}.
struct PointSourceModel {
    int q = 1;
    std::vector<Source> sources;

    /// M = sum |A_k|
    double total_mass() const {
        double m = 0.0;
        for (const auto& s : sources) m += std::abs(s.amplitude);
        return m;
    }
    /// m = min |A_k|
    double min_modulus() const {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& s : sources) m = std::min(m, std::abs(s.amplitude));
        return m;
    }

    void validate() const {
        if (q < 1) throw std::invalid_argument("PointSourceModel: dimension must be >= 1");
        if (sources.empty()) throw std::invalid_argument("PointSourceModel: needs at least one source");
        for (const auto& s : sources) {
            if (!(std::abs(s.amplitude) > 0.0))
                throw std::invalid_argument("PointSourceModel: amplitudes must be nonzero");
            if (static_cast<int>(s.frequency.size()) != q)
                throw std::invalid_argument("PointSourceModel: frequency dimension mismatch");
        }
    }
};

/// One affine line in frequency space: samples are taken at
/// offset + ell*direction for ell = -(n-1) .. n-1, i.e. 2n-1 samples.
struct SamplingLine {
    std::vector<double> offset;
    std::vector<double> direction;
    int n = 0;

    int dimension() const { return static_cast<int>(direction.size()); }
    std::size_t sample_count() const { return static_cast<std::size_t>(2 * n - 1); }

    void validate() const {
        if (n < 1) throw std::invalid_argument("SamplingLine: degree must be >= 1");
        if (direction.empty() || direction.size() != offset.size())
            throw std::invalid_argument("SamplingLine: offset/direction dimension mismatch");
        double norm2 = 0.0;
        for (double d : direction) norm2 += d * d;
        if (!(norm2 > 0.0)) throw std::invalid_argument("SamplingLine: direction must be nonzero");
    }
};

/// The 2n-1 (possibly noisy) samples collected along one line.
struct SampleLine {
    SamplingLine line;
    std::vector<std::complex<double>> values;  ///< index i holds ell = i - (n-1)
    double noise_sigma = 0.0;                  ///< sub-Gaussian parameter V per component

    std::complex<double> at(int ell) const {
        return values[static_cast<std::size_t>(ell + line.n - 1)];
    }
};

enum class NoiseFamily { complex_gaussian, bounded_uniform };

/// Noise request: exactly one of snr_db / sigma must be set. Both families
/// draw independent real and imaginary parts of second moment V^2 each, so
/// E|eps|^2 = 2 V^2.
struct NoiseSpec {
    NoiseFamily family = NoiseFamily::complex_gaussian;
    std::optional<double> snr_db;
    std::optional<double> sigma;
    std::uint64_t seed = 0;

    void validate() const {
        if (snr_db.has_value() == sigma.has_value())
            throw std::invalid_argument("NoiseSpec: exactly one of snr_db / sigma must be supplied");
        if (sigma && *sigma < 0.0) throw std::invalid_argument("NoiseSpec: sigma must be nonnegative");
    }
};

/// Noise-free moments of `model` along `line`.
inline std::vector<std::complex<double>> exact_moments(const PointSourceModel& model,
                                                       const SamplingLine& line) {
    model.validate();
    line.validate();
    if (line.dimension() != model.q)
        throw std::invalid_argument("exact_moments: line/model dimension mismatch");

    const int n = line.n;
    std::vector<std::complex<double>> out(line.sample_count(), {0.0, 0.0});
    for (const auto& src : model.sources) {
        double off_phase = 0.0, dir_phase = 0.0;
        for (int d = 0; d < model.q; ++d) {
            off_phase += line.offset[static_cast<std::size_t>(d)] * src.frequency[static_cast<std::size_t>(d)];
            dir_phase += line.direction[static_cast<std::size_t>(d)] * src.frequency[static_cast<std::size_t>(d)];
        }
        const std::complex<double> base = src.amplitude * std::polar(1.0, -off_phase);
        for (int ell = -(n - 1); ell <= n - 1; ++ell)
            out[static_cast<std::size_t>(ell + n - 1)] += base * std::polar(1.0, -ell * dir_phase);
    }
    return out;
}

/// Noise level V for a requested per-sample SNR: the mean signal power
/// P = mean |mu_hat(ell)|^2 over the line, and V = sqrt(P / (2*10^(snr/10)))
/// so that E|eps|^2 = 2 V^2 = P * 10^(-snr/10).
inline double calibrate_sigma(std::span<const std::complex<double>> moments, double snr_db) {
    if (moments.empty()) throw std::invalid_argument("calibrate_sigma: empty moment vector");
    double power = 0.0;
    for (const auto& v : moments) power += std::norm(v);
    power /= static_cast<double>(moments.size());
    if (!(power > 0.0)) throw std::invalid_argument("calibrate_sigma: all-zero moments");
    return std::sqrt(power / (2.0 * std::pow(10.0, snr_db / 10.0)));
}

/// Add i.i.d. sub-Gaussian noise to exact moments. Deterministic given
/// spec.seed; sigma = 0 returns the input unchanged.
inline SampleLine add_noise(std::span<const std::complex<double>> moments,
                            const SamplingLine& line, const NoiseSpec& spec) {
    spec.validate();
    line.validate();
    if (moments.size() != line.sample_count())
        throw std::invalid_argument("add_noise: moment count does not match line");

    const double v = spec.sigma ? *spec.sigma : calibrate_sigma(moments, *spec.snr_db);

    SampleLine out;
    out.line = line;
    out.noise_sigma = v;
    out.values.assign(moments.begin(), moments.end());
    if (v == 0.0) return out;

    std::mt19937_64 rng(spec.seed);
    if (spec.family == NoiseFamily::complex_gaussian) {
        std::normal_distribution<double> g(0.0, v);
        for (auto& val : out.values) {
            const double re = g(rng);
            const double im = g(rng);
            val += std::complex<double>(re, im);
        }
    } else {
        // same second moment per component as the Gaussian family
        const double half_width = std::sqrt(3.0) * v;
        std::uniform_real_distribution<double> u(-half_width, half_width);
        for (auto& val : out.values) {
            const double re = u(rng);
            const double im = u(rng);
            val += std::complex<double>(re, im);
        }
    }
    return out;
}

/// Convenience: exact moments plus noise in one step.
inline SampleLine sample_line(const PointSourceModel& model, const SamplingLine& line,
                              const NoiseSpec& spec) {
    const auto moments = exact_moments(model, line);
    return add_noise(moments, line, spec);
}

/// Noise-free SampleLine.
inline SampleLine sample_line_exact(const PointSourceModel& model, const SamplingLine& line) {
    SampleLine out;
    out.line = line;
    out.values = exact_moments(model, line);
    out.noise_sigma = 0.0;
    return out;
}

}  // namespace expsum
