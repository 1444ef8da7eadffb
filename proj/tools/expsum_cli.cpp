// Command-line harness: dataset synthesis, recovery runs, seeded SNR sweeps,
// subspace-baseline comparisons, and plot-data emission.
//
// Exit codes: 0 success, 2 configuration error, 3 pipeline degeneracy.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "expsum/expsum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace expsum;

namespace {

class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

enum class SnrReference { measured, unit };

struct NoiseConfig {
    NoiseFamily family = NoiseFamily::complex_gaussian;
    std::vector<double> snr_db;  // exactly one of snr_db / sigma is nonempty
    std::vector<double> sigma;
    SnrReference reference = SnrReference::measured;
    int trials = 1;
    std::uint64_t seed = 0;

    std::size_t level_count() const { return std::max(snr_db.size(), sigma.size()); }
    bool noiseless() const { return snr_db.empty() && sigma.empty(); }

    /// Noise parameter V for level index i on a line with the given moments.
    double resolve_sigma(std::size_t i, std::span<const std::complex<double>> moments) const {
        if (!sigma.empty()) return sigma.at(i);
        const double snr = snr_db.at(i);
        if (reference == SnrReference::unit) return std::sqrt(std::pow(10.0, -snr / 10.0) / 2.0);
        return calibrate_sigma(moments, snr);
    }
};

struct BaselineConfig {
    bool enabled = false;
    int model_order = 0;
    int hankel_rows = 0;
    int music_grid = 8192;
    double min_separation = 0.0;
};

struct Config {
    PointSourceModel model;
    std::map<std::string, std::vector<double>> model_lines;  // named vectors from the model file
    DirectionBasis basis;
    int n = 0;
    std::size_t grid_size = 0;
    double filter_sharpness = 1.25;
    NoiseConfig noise;
    RecoveryParams recovery;
    std::vector<double> match_radii;
    std::string dataset_dir;
    std::vector<int> kernel_profile_n;
    BaselineConfig baselines;
};

PointSourceModel scene_from_spec(const json& jm, const DirectionBasis& basis,
                                 std::uint64_t seed) {
    SceneSpec spec;
    spec.count = jm.at("count").get<int>();
    if (jm.contains("amp")) {
        spec.amp_min = jm.at("amp").at(0).get<double>();
        spec.amp_max = jm.at("amp").at(1).get<double>();
    }
    spec.separation_floor = jm.value("separation_floor", 0.0);
    spec.margin = jm.value("margin", 0.1);
    return random_scene(spec, basis, seed);
}

DirectionBasis parse_directions(const json& j, int q) {
    if (!j.contains("directions") || j.at("directions") == "identity") return identity_basis(q);
    const auto& jd = j.at("directions");
    if (jd.is_object() && jd.contains("path")) return basis_from_json(load_json_file(jd.at("path")));
    if (jd.is_object() && jd.contains("rows")) {
        DirectionBasis b;
        b.rows = jd.at("rows").get<std::vector<std::vector<double>>>();
        b.q = static_cast<int>(b.rows.size());
        b.validate();
        return b;
    }
    throw config_error("directions must be \"identity\", {\"path\":...} or {\"rows\":...}");
}

Config load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
    json j;
    try {
        j = load_json_file(path);
    } catch (const std::exception& e) {
        throw config_error(e.what());
    }

    Config cfg;
    try {
        cfg.n = j.at("n").get<int>();
        if (cfg.n < 1) throw config_error("n must be >= 1");
        cfg.grid_size = j.value("grid_size", 0);
        cfg.filter_sharpness = j.value("filter_sharpness", 1.25);

        if (j.contains("noise")) {
            const auto& jn = j.at("noise");
            const std::string family = jn.value("family", "complex-gaussian");
            if (family == "complex-gaussian")
                cfg.noise.family = NoiseFamily::complex_gaussian;
            else if (family == "bounded-uniform")
                cfg.noise.family = NoiseFamily::bounded_uniform;
            else
                throw config_error("unknown noise family: " + family);
            if (jn.contains("snr_db")) cfg.noise.snr_db = jn.at("snr_db").get<std::vector<double>>();
            if (jn.contains("sigma")) cfg.noise.sigma = jn.at("sigma").get<std::vector<double>>();
            if (!cfg.noise.snr_db.empty() && !cfg.noise.sigma.empty())
                throw config_error("noise: give snr_db or sigma, not both");
            const std::string ref = jn.value("reference", "measured");
            if (ref == "measured")
                cfg.noise.reference = SnrReference::measured;
            else if (ref == "unit")
                cfg.noise.reference = SnrReference::unit;
            else
                throw config_error("unknown noise reference: " + ref);
            cfg.noise.trials = jn.value("trials", 1);
            if (cfg.noise.trials < 1) throw config_error("noise.trials must be >= 1");
            cfg.noise.seed = jn.value("seed", 0ULL);
        }
        if (seed_override) cfg.noise.seed = *seed_override;

        const auto& jm = j.at("model");
        if (jm.contains("path")) {
            const json file = load_json_file(jm.at("path").get<std::string>());
            cfg.model = model_from_json(file);
            cfg.model_lines = named_lines_from_json(file);
        } else if (!jm.contains("synthetic")) {
            throw config_error("model must contain \"path\" or \"synthetic\"");
        }

        if (j.contains("directions")) {
            cfg.basis = parse_directions(j, cfg.model.q > 0 ? cfg.model.q : 1);
        } else if (cfg.model_lines.count("delta_1")) {
            DirectionBasis b;
            b.q = static_cast<int>(cfg.model_lines.at("delta_1").size());
            for (int d = 1; d <= b.q; ++d) {
                const std::string key = "delta_" + std::to_string(d);
                if (!cfg.model_lines.count(key))
                    throw config_error("model file names delta_1 but not " + key);
                b.rows.push_back(cfg.model_lines.at(key));
            }
            b.validate();
            cfg.basis = b;
        } else if (jm.contains("synthetic")) {
            cfg.basis = identity_basis(jm.at("synthetic").value("q", 1));
        } else {
            cfg.basis = identity_basis(cfg.model.q);
        }

        if (jm.contains("synthetic")) {
            const auto& js = jm.at("synthetic");
            if (js.value("q", cfg.basis.q) != cfg.basis.q)
                throw config_error("synthetic q does not match the direction basis");
            cfg.model = scene_from_spec(js, cfg.basis, js.value("seed", 1ULL));
        }
        cfg.model.validate();
        if (cfg.model.q != cfg.basis.q) throw config_error("model/basis dimension mismatch");

        if (j.contains("recovery")) {
            const auto& jr = j.at("recovery");
            cfg.recovery.m_min = jr.value("m_min", 1.0);
            cfg.recovery.eta = jr.value("eta", two_pi);
            cfg.recovery.refine_peak = jr.value("refine_peak", false);
            cfg.recovery.validate();
        }
        cfg.match_radii = j.value("match_radii", std::vector<double>{0.05});
        if (cfg.match_radii.empty()) throw config_error("match_radii must be nonempty");
        cfg.dataset_dir = j.value("dataset_dir", std::string{});
        cfg.kernel_profile_n = j.value("kernel_profile_n", std::vector<int>{128});

        if (j.contains("baselines")) {
            const auto& jb = j.at("baselines");
            cfg.baselines.enabled = jb.value("enabled", true);
            cfg.baselines.model_order = jb.value("model_order", 0);
            cfg.baselines.hankel_rows = jb.value("hankel_rows", 0);
            cfg.baselines.music_grid = jb.value("music_grid", 8192);
            cfg.baselines.min_separation = jb.value("min_separation", 0.0);
        }
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(std::string("bad config: ") + e.what());
    }
    return cfg;
}

SubspaceConfig subspace_config(const Config& cfg) {
    SubspaceConfig sc;
    sc.model_order = cfg.baselines.model_order;
    sc.hankel_rows = cfg.baselines.hankel_rows;
    sc.music_grid = cfg.baselines.music_grid;
    sc.min_separation = cfg.baselines.min_separation;
    return sc;
}

std::uint64_t line_seed(std::uint64_t base, std::size_t level, int trial, std::size_t line_idx) {
    return mix_seed(mix_seed(base, level * 1000003ULL + static_cast<std::uint64_t>(trial)),
                    line_idx);
}

std::vector<SampleLine> synthesize_lines(const Config& cfg, std::size_t level, int trial,
                                         std::vector<double>* sigmas = nullptr) {
    std::vector<SampleLine> out;
    std::size_t idx = 0;
    for (const auto& line : anchored_lines(cfg.basis, cfg.n)) {
        const auto moments = exact_moments(cfg.model, line);
        if (cfg.noise.noiseless()) {
            out.push_back(sample_line_exact(cfg.model, line));
            if (sigmas) sigmas->push_back(0.0);
        } else {
            NoiseSpec spec;
            spec.family = cfg.noise.family;
            spec.sigma = cfg.noise.resolve_sigma(level, moments);
            spec.seed = line_seed(cfg.noise.seed, level, trial, idx);
            out.push_back(add_noise(moments, line, spec));
            if (sigmas) sigmas->push_back(*spec.sigma);
        }
        ++idx;
    }
    return out;
}

/// Greedy circular matching for 1D estimates; returns (matched, rmse).
std::pair<int, double> match_1d(const std::vector<double>& truth, const std::vector<double>& est,
                                double radius) {
    std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
    for (std::size_t i = 0; i < truth.size(); ++i)
        for (std::size_t j = 0; j < est.size(); ++j) {
            const double d = circular_distance(truth[i], est[j]);
            if (d < radius) cand.emplace_back(d, i, j);
        }
    std::sort(cand.begin(), cand.end());
    std::vector<bool> used_t(truth.size(), false), used_e(est.size(), false);
    int matched = 0;
    double sq = 0.0;
    for (const auto& [d, i, j] : cand) {
        if (used_t[i] || used_e[j]) continue;
        used_t[i] = used_e[j] = true;
        ++matched;
        sq += d * d;
    }
    return {matched, matched > 0 ? std::sqrt(sq / matched) : 0.0};
}

std::vector<double> truth_lambdas(const Config& cfg) {
    std::vector<double> out;
    for (const auto& s : cfg.model.sources)
        out.push_back(wrap_to_pi(cfg.basis.project(s.frequency)[0]));
    return out;
}

// ---------------------------------------------------------------------------

int cmd_synth(const Config& cfg, const fs::path& out) {
    fs::create_directories(out);

    json manifest;
    manifest["n"] = cfg.n;
    manifest["q"] = cfg.basis.q;
    manifest["base_seed"] = cfg.noise.seed;
    manifest["files"] = json::array();
    std::vector<double> sigmas;
    const auto samples = synthesize_lines(cfg, 0, 0, &sigmas);
    std::size_t total = 0;
    for (std::size_t d = 0; d < samples.size(); ++d) {
        const std::string name = "line_" + std::to_string(d + 1) + ".csv";
        write_samples_csv((out / name).string(), samples[d]);
        total += samples[d].values.size();
        manifest["files"].push_back({{"file", name},
                                     {"offset", samples[d].line.offset},
                                     {"direction", samples[d].line.direction},
                                     {"sigma", sigmas[d]},
                                     {"seed", cfg.noise.noiseless()
                                                  ? 0
                                                  : line_seed(cfg.noise.seed, 0, 0, d)},
                                     {"samples", samples[d].values.size()}});
    }
    manifest["total_samples"] = total;
    save_json_file((out / "model.json").string(), model_to_json(cfg.model));
    save_json_file((out / "basis.json").string(), basis_to_json(cfg.basis));
    save_json_file((out / "manifest.json").string(), manifest);
    std::cout << "synth: wrote " << samples.size() << " line(s), " << total << " samples to "
              << out.string() << "\n";
    return 0;
}

int cmd_recover(const Config& cfg, const fs::path& out) {
    const fs::path data_dir = cfg.dataset_dir.empty() ? out : fs::path(cfg.dataset_dir);
    if (!fs::exists(data_dir / "manifest.json"))
        throw config_error("no dataset manifest in " + data_dir.string() + "; run synth first");

    const json manifest = load_json_file((data_dir / "manifest.json").string());
    const auto model = model_from_json(load_json_file((data_dir / "model.json").string()));
    const auto basis = basis_from_json(load_json_file((data_dir / "basis.json").string()));
    const int n = manifest.at("n").get<int>();

    const LowPassFilter filter(cfg.filter_sharpness);
    const auto weights = make_kernel_weights(filter, n);

    std::vector<SampleLine> samples;
    const auto line_specs = anchored_lines(basis, n);
    for (std::size_t d = 0; d < line_specs.size(); ++d) {
        SampleLine s;
        s.line = line_specs[d];
        s.values = read_samples_csv(
            (data_dir / manifest.at("files").at(d).at("file").get<std::string>()).string());
        if (s.values.size() != s.line.sample_count())
            throw config_error("sample file row count does not match the manifest degree");
        s.noise_sigma = manifest.at("files").at(d).value("sigma", 0.0);
        samples.push_back(std::move(s));
    }

    fs::create_directories(out);

    for (std::size_t d = 0; d < samples.size(); ++d) {
        const auto grid = eval_sigma_grid(samples[d], weights, cfg.grid_size);
        write_spectrum_csv((out / ("spectrum_" + std::to_string(d + 1) + ".csv")).string(), grid);
        save_json_file((out / ("recovery_" + std::to_string(d + 1) + ".json")).string(),
                       recovery_to_json(estimate_sources(grid, cfg.recovery)));
        if (d == 0) {
            PointSourceModel projected;
            projected.q = 1;
            for (const auto& src : model.sources)
                projected.sources.push_back(
                    {src.amplitude, {wrap_to_pi(basis.project(src.frequency)[0])}});
            save_json_file((out / "condition_report.json").string(),
                           theorem_report_to_json(
                               verify_theorem_conditions(grid, cfg.recovery, projected)));
        }
    }

    const auto assembled = recover_anchored(samples, basis, weights, cfg.recovery, cfg.grid_size);
    save_json_file((out / "assembled.json").string(), assembled_to_json(assembled));
    if (assembled.count() == 0)
        throw degenerate_error("recovery produced no sources (threshold too high or no peaks)");

    const auto folded = fold_into_basis_cell(basis, model);
    json reports = json::array();
    for (double r : cfg.match_radii)
        reports.push_back(match_report_to_json(match_points(folded, assembled, r)));
    save_json_file((out / "match_report.json").string(), reports);

    std::cout << "recover: " << assembled.count() << " source(s); match at r="
              << format_double(cfg.match_radii[0]) << ": "
              << reports[0]["matched"].get<int>() << "/" << model.sources.size() << "\n";
    return 0;
}

struct TrialResult {
    std::map<std::string, std::pair<int, double>> matched_rmse;  // method -> (matched, rmse)
    std::map<std::string, double> runtime;
};

int cmd_bench(const Config& cfg, const fs::path& out, int threads) {
    fs::create_directories(out);
    const LowPassFilter filter(cfg.filter_sharpness);
    const auto weights = make_kernel_weights(filter, cfg.n);
    const auto folded = fold_into_basis_cell(cfg.basis, cfg.model);
    const auto lambdas = truth_lambdas(cfg);
    const double radius = cfg.match_radii[0];
    const std::size_t levels = cfg.noise.noiseless() ? 1 : cfg.noise.level_count();
    const int trials = cfg.noise.trials;

    const bool run_baselines = cfg.baselines.enabled && cfg.basis.q == 1;
    if (cfg.baselines.enabled && cfg.basis.q != 1)
        std::cerr << "bench: baselines are univariate; skipping them for q = " << cfg.basis.q
                  << "\n";

    std::vector<std::vector<TrialResult>> results(
        levels, std::vector<TrialResult>(static_cast<std::size_t>(trials)));

    auto run_trial = [&](std::size_t level, int trial) {
        TrialResult res;
        using Clock = std::chrono::steady_clock;

        const auto samples = synthesize_lines(cfg, level, trial);
        auto t0 = Clock::now();
        try {
            if (cfg.basis.q == 1) {
                const auto grid = eval_sigma_grid(samples[0], weights, cfg.grid_size);
                const auto est = estimate_sources(grid, cfg.recovery);
                std::vector<double> est_lambdas;
                for (const auto& e : est) est_lambdas.push_back(e.lambda_hat);
                res.matched_rmse["localized"] = match_1d(lambdas, est_lambdas, radius);
            } else {
                const auto assembled =
                    recover_anchored(samples, cfg.basis, weights, cfg.recovery, cfg.grid_size);
                const auto rep = match_points(folded, assembled, radius);
                res.matched_rmse["localized"] = {rep.matched, rep.rmse};
            }
        } catch (const degenerate_error&) {
            res.matched_rmse["localized"] = {0, 0.0};
        }
        res.runtime["localized"] = std::chrono::duration<double>(Clock::now() - t0).count();

        if (run_baselines) {
            const auto sc = subspace_config(cfg);
            auto tb = Clock::now();
            try {
                std::vector<double> lam;
                for (const auto& e : esprit_1d(samples[0], sc)) lam.push_back(e.lambda_hat);
                res.matched_rmse["esprit"] = match_1d(lambdas, lam, radius);
            } catch (const degenerate_error&) {
                res.matched_rmse["esprit"] = {0, 0.0};
            }
            res.runtime["esprit"] = std::chrono::duration<double>(Clock::now() - tb).count();

            tb = Clock::now();
            try {
                res.matched_rmse["music"] = match_1d(lambdas, music_1d(samples[0], sc), radius);
            } catch (const degenerate_error&) {
                res.matched_rmse["music"] = {0, 0.0};
            }
            res.runtime["music"] = std::chrono::duration<double>(Clock::now() - tb).count();
        }
        results[level][static_cast<std::size_t>(trial)] = std::move(res);
    };

    const std::size_t cells = levels * static_cast<std::size_t>(trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= cells) return;
            run_trial(c / static_cast<std::size_t>(trials),
                      static_cast<int>(c % static_cast<std::size_t>(trials)));
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<std::string> methods = {"localized"};
    if (run_baselines) {
        methods.push_back("esprit");
        methods.push_back("music");
    }

    std::ofstream csv(out / "bench.csv");
    csv << "snr_db,method,samples,total_points,recuperated_mean,rmse_mean,rmse_std,runtime_s\n";
    for (std::size_t level = 0; level < levels; ++level) {
        for (const auto& method : methods) {
            double rec = 0.0, rmse = 0.0, rmse2 = 0.0, rt = 0.0;
            for (int t = 0; t < trials; ++t) {
                const auto& res = results[level][static_cast<std::size_t>(t)];
                rec += res.matched_rmse.at(method).first;
                const double r = res.matched_rmse.at(method).second;
                rmse += r;
                rmse2 += r * r;
                rt += res.runtime.at(method);
            }
            rec /= trials;
            rmse /= trials;
            rt /= trials;
            const double var = std::max(rmse2 / trials - rmse * rmse, 0.0);
            const std::size_t sample_count =
                method == "localized" ? static_cast<std::size_t>(cfg.basis.q) * (2 * cfg.n - 1)
                                      : static_cast<std::size_t>(2 * cfg.n - 1);
            csv << (cfg.noise.snr_db.empty() ? format_double(0.0)
                                             : format_double(cfg.noise.snr_db[level]))
                << "," << method << "," << sample_count << "," << cfg.model.sources.size() << ","
                << format_double(rec) << "," << format_double(rmse) << ","
                << format_double(std::sqrt(var)) << "," << format_double(rt) << "\n";
        }
    }
    csv.close();
    std::cout << "bench: wrote " << (out / "bench.csv").string() << " (" << levels
              << " level(s) x " << trials << " trial(s))\n";
    return 0;
}

int cmd_plotdata(const Config& cfg, const fs::path& out) {
    fs::create_directories(out);
    const LowPassFilter filter(cfg.filter_sharpness);

    for (int n : cfg.kernel_profile_n) {
        const auto kw = make_kernel_weights(filter, n);
        SampleLine unit;
        unit.line.offset = {0.0};
        unit.line.direction = {1.0};
        unit.line.n = n;
        unit.values.assign(unit.line.sample_count(), {1.0, 0.0});
        const std::size_t grid_n = std::max<std::size_t>(8192, default_grid_size(n));
        const auto grid = eval_sigma_grid(unit, kw, grid_n);
        write_spectrum_csv((out / ("kernel_" + std::to_string(n) + ".csv")).string(), grid);
    }

    const auto weights = make_kernel_weights(filter, cfg.n);
    const auto samples = synthesize_lines(cfg, 0, 0);
    const auto grid = eval_sigma_grid(samples[0], weights, cfg.grid_size);
    const double threshold = cfg.recovery.m_min / 2.0;
    write_spectrum_csv((out / "spectrum_thresholded.csv").string(), grid, &threshold);

    SubspaceConfig sc = subspace_config(cfg);
    write_values_csv((out / "hankel_sv.csv").string(), hankel_singular_values(samples[0], sc));

    std::cout << "plotdata: wrote kernel profiles, thresholded spectrum and singular values to "
              << out.string() << "\n";
    return 0;
}

int cmd_baseline(const Config& cfg, const fs::path& out) {
    if (cfg.baselines.model_order < 1)
        throw config_error("baseline: baselines.model_order is required");
    fs::create_directories(out);
    const auto samples = synthesize_lines(cfg, 0, 0);
    const auto sc = subspace_config(cfg);

    json j;
    j["esprit"] = json::array();
    for (const auto& e : esprit_1d(samples[0], sc))
        j["esprit"].push_back({{"lambda_hat", e.lambda_hat},
                               {"amp_re", e.amp_hat.real()},
                               {"amp_im", e.amp_hat.imag()}});
    j["music"] = music_1d(samples[0], sc);
    save_json_file((out / "baseline.json").string(), j);
    write_values_csv((out / "hankel_sv.csv").string(), hankel_singular_values(samples[0], sc));
    std::cout << "baseline: wrote estimates for " << cfg.baselines.model_order
              << " component(s)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Recovery of multidimensional exponential sums via localized kernels"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_override;
    int threads = 1;

    app.add_option("--config", config_path, "experiment configuration (JSON)")->required();
    app.add_option("--seed", seed_override, "override the config base seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

    auto* synth = app.add_subcommand("synth", "generate dataset files");
    auto* recover = app.add_subcommand("recover", "run the recovery pipeline on a dataset");
    auto* bench = app.add_subcommand("bench", "seeded SNR sweep with aggregate CSV output");
    auto* plotdata = app.add_subcommand("plotdata", "emit plot-ready CSVs");
    auto* baseline = app.add_subcommand("baseline", "run the subspace reference methods");
    for (auto* sub : {synth, recover, bench, plotdata, baseline}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        const Config cfg = load_config(config_path, seed_override);
        const fs::path out(out_dir);
        if (synth->parsed()) return cmd_synth(cfg, out);
        if (recover->parsed()) return cmd_recover(cfg, out);
        if (bench->parsed()) return cmd_bench(cfg, out, threads);
        if (plotdata->parsed()) return cmd_plotdata(cfg, out);
        if (baseline->parsed()) return cmd_baseline(cfg, out);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const degenerate_error& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
