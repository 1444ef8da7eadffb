#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "expsum/model.hpp"
#include "expsum/multidim.hpp"
#include "expsum/recovery.hpp"

namespace expsum {

/// Shortest round-trippable decimal form of a double; keeps emitted files
/// byte-stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline nlohmann::json model_to_json(const PointSourceModel& model,
                                    const std::map<std::string, std::vector<double>>& lines = {}) {
    nlohmann::json j;
    j["q"] = model.q;
    j["sources"] = nlohmann::json::array();
    for (const auto& s : model.sources) {
        nlohmann::json src;
        src["re"] = s.amplitude.real();
        src["im"] = s.amplitude.imag();
        src["w"] = s.frequency;
        j["sources"].push_back(src);
    }
    if (!lines.empty()) {
        nlohmann::json jl;
        for (const auto& [name, vec] : lines) jl[name] = vec;
        j["lines"] = jl;
    }
    return j;
}

inline PointSourceModel model_from_json(const nlohmann::json& j) {
    PointSourceModel model;
    model.q = j.at("q").get<int>();
    for (const auto& src : j.at("sources")) {
        Source s;
        s.amplitude = {src.at("re").get<double>(), src.value("im", 0.0)};
        s.frequency = src.at("w").get<std::vector<double>>();
        model.sources.push_back(std::move(s));
    }
    model.validate();
    return model;
}

inline std::map<std::string, std::vector<double>> named_lines_from_json(const nlohmann::json& j) {
    std::map<std::string, std::vector<double>> out;
    if (j.contains("lines"))
        for (const auto& [name, vec] : j.at("lines").items())
            out[name] = vec.get<std::vector<double>>();
    return out;
}

inline nlohmann::json basis_to_json(const DirectionBasis& basis) {
    nlohmann::json j;
    j["q"] = basis.q;
    j["rows"] = basis.rows;
    return j;
}

inline DirectionBasis basis_from_json(const nlohmann::json& j) {
    DirectionBasis b;
    b.q = j.at("q").get<int>();
    b.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    b.validate();
    return b;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

/// Sample CSV: header `ell,re,im`, one row per sample.
inline void write_samples_csv(const std::string& path, const SampleLine& samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "ell,re,im\n";
    const int n = samples.line.n;
    for (int ell = -(n - 1); ell <= n - 1; ++ell) {
        const auto v = samples.at(ell);
        out << ell << "," << format_double(v.real()) << "," << format_double(v.imag()) << "\n";
    }
}

inline std::vector<std::complex<double>> read_samples_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string header;
    std::getline(in, header);
    if (header != "ell,re,im") throw std::runtime_error(path + ": unexpected sample CSV header");
    std::vector<std::pair<int, std::complex<double>>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        const int ell = std::stoi(tok);
        std::getline(ss, tok, ',');
        const double re = std::stod(tok);
        std::getline(ss, tok, ',');
        const double im = std::stod(tok);
        rows.emplace_back(ell, std::complex<double>(re, im));
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::complex<double>> values;
    values.reserve(rows.size());
    for (const auto& [ell, v] : rows) values.push_back(v);
    return values;
}

/// Spectrum CSV: columns x, re, im, abs; optional constant threshold column.
inline void write_spectrum_csv(const std::string& path, const SpectrumGrid& grid,
                               const double* threshold = nullptr) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << (threshold ? "x,re,im,abs,threshold\n" : "x,re,im,abs\n");
    for (std::size_t j = 0; j < grid.grid_size; ++j) {
        const auto v = grid.values[j];
        out << format_double(grid.angle(j)) << "," << format_double(v.real()) << ","
            << format_double(v.imag()) << "," << format_double(std::abs(v));
        if (threshold) out << "," << format_double(*threshold);
        out << "\n";
    }
}

inline nlohmann::json recovery_to_json(const std::vector<RecoveredSource1D>& sources) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : sources) {
        j.push_back({{"lambda_hat", s.lambda_hat},
                     {"amp_hat", s.amp_hat},
                     {"phase_hat", s.phase_hat},
                     {"cluster_diameter", s.cluster_diameter}});
    }
    return j;
}

inline nlohmann::json assembled_to_json(const AssembledSources& est) {
    nlohmann::json j;
    j["count"] = est.count();
    j["sources"] = nlohmann::json::array();
    for (std::size_t i = 0; i < est.count(); ++i) {
        j["sources"].push_back({{"w", est.w[i]},
                                {"amp", est.amp[i]},
                                {"pairing_distance", est.pairing_distance[i]}});
    }
    j["dropped_unpaired"] = est.dropped_unpaired;
    return j;
}

inline nlohmann::json match_report_to_json(const MatchReport& rep) {
    return {{"r", rep.radius},
            {"matched", rep.matched},
            {"rmse", rep.rmse},
            {"unmatched_truth", rep.unmatched_truth},
            {"unmatched_est", rep.unmatched_est}};
}

inline nlohmann::json theorem_report_to_json(const TheoremReport& rep) {
    return {{"disjoint_union_ok", rep.disjoint_union_ok},
            {"diameter_ok", rep.diameter_ok},
            {"separation_ok", rep.separation_ok},
            {"interval_inclusion_ok", rep.interval_inclusion_ok},
            {"n_large_enough", rep.n_large_enough},
            {"group_count", rep.group_count},
            {"stray_nodes", rep.stray_nodes},
            {"max_diameter", rep.max_diameter},
            {"min_separation", rep.min_separation},
            {"l_emp", rep.l_emp},
            {"c_emp", rep.c_emp}};
}

/// One value per row, no header.
inline void write_values_csv(const std::string& path, const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (double v : values) out << format_double(v) << "\n";
}

}  // namespace expsum
