// io.cpp
#include "spinbath/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <locale>
#include <sstream>
#include <stdexcept>

namespace spinbath {

namespace {

using Json = nlohmann::ordered_json;

std::string method_name(EvolveMethod m) {
    switch (m) {
        case EvolveMethod::automatic: return "auto";
        case EvolveMethod::adaptive_rk: return "adaptive_rk";
        case EvolveMethod::spectral: return "spectral";
    }
    throw std::logic_error("method_name: unknown method");
}

EvolveMethod parse_method(const std::string& s) {
    if (s == "auto") return EvolveMethod::automatic;
    if (s == "adaptive_rk") return EvolveMethod::adaptive_rk;
    if (s == "spectral") return EvolveMethod::spectral;
    throw std::invalid_argument("parse_method: unknown method '" + s + "'");
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix_from_json: expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw std::invalid_argument("matrix_from_json: ragged rows");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto& cell = row.at(static_cast<std::size_t>(k));
            m(i, k) = {cell.at(0).get<double>(), cell.at(1).get<double>()};
        }
    }
    return m;
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text) {
    const Json j = Json::parse(text);
    ScenarioConfig c;
    c.experiment = j.value("experiment", c.experiment);
    c.n_spins = j.value("n_spins", c.n_spins);
    c.beta_omega0 = j.value("beta_omega0", c.beta_omega0);
    c.spatial_model = j.value("spatial_model", c.spatial_model);
    c.alpha = j.value("alpha", c.alpha);
    c.xi = j.value("xi", c.xi);
    c.r = j.value("r", c.r);
    c.omega = j.value("omega", c.omega);
    c.initial_state = j.value("initial_state", c.initial_state);
    if (j.contains("dicke")) {
        const auto& d = j.at("dicke");
        c.dicke_two_j = d.value("two_j", c.dicke_two_j);
        c.dicke_copy = d.value("copy", c.dicke_copy);
        c.dicke_two_m = d.value("two_m", c.dicke_two_m);
    }
    if (j.contains("initial_matrix") && !j.at("initial_matrix").is_null()) {
        c.custom_initial = matrix_from_json(j.at("initial_matrix"));
        c.has_custom_initial = true;
    }
    if (j.contains("integrator")) {
        const auto& i = j.at("integrator");
        c.integrator.rel_tol = i.value("rel_tol", c.integrator.rel_tol);
        c.integrator.abs_tol = i.value("abs_tol", c.integrator.abs_tol);
        c.integrator.t_max = i.value("t_max", c.integrator.t_max);
        c.integrator.max_step = i.value("max_step", c.integrator.max_step);
        c.integrator.record_every = i.value("record_every", c.integrator.record_every);
        c.integrator.log_record = i.value("log_record", c.integrator.log_record);
        c.integrator.record_start = i.value("record_start", c.integrator.record_start);
        c.integrator.samples = i.value("samples", c.integrator.samples);
        c.integrator.method = parse_method(i.value("method", method_name(c.integrator.method)));
    }
    c.zero_tol = j.value("zero_tol", c.zero_tol);
    c.adr_threshold = j.value("adr_threshold", c.adr_threshold);
    if (j.contains("plateau")) {
        const auto& p = j.at("plateau");
        c.plateau_signal = p.value("signal", c.plateau_signal);
        c.plateau_eps = p.value("eps_slope", c.plateau_eps);
        c.plateau_delta = p.value("delta", c.plateau_delta);
        if (p.contains("thermal_reference") && !p.at("thermal_reference").is_null()) {
            c.thermal_reference = p.at("thermal_reference").get<double>();
            c.has_thermal_reference = true;
        }
    }
    if (j.contains("alphas")) c.alphas = j.at("alphas").get<std::vector<double>>();
    c.n_min = j.value("n_min", c.n_min);
    c.n_max = j.value("n_max", c.n_max);
    c.seed = j.value("seed", c.seed);
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const ScenarioConfig& c) {
    Json j;
    j["experiment"] = c.experiment;
    j["n_spins"] = c.n_spins;
    j["beta_omega0"] = c.beta_omega0;
    j["spatial_model"] = c.spatial_model;
    j["alpha"] = c.alpha;
    j["xi"] = c.xi;
    j["r"] = c.r;
    j["omega"] = c.omega;
    j["initial_state"] = c.initial_state;
    j["dicke"] = Json{{"two_j", c.dicke_two_j}, {"copy", c.dicke_copy}, {"two_m", c.dicke_two_m}};
    j["initial_matrix"] = c.has_custom_initial ? matrix_to_json(c.custom_initial) : Json();
    j["integrator"] = Json{{"rel_tol", c.integrator.rel_tol},
                           {"abs_tol", c.integrator.abs_tol},
                           {"t_max", c.integrator.t_max},
                           {"max_step", c.integrator.max_step},
                           {"record_every", c.integrator.record_every},
                           {"log_record", c.integrator.log_record},
                           {"record_start", c.integrator.record_start},
                           {"samples", c.integrator.samples},
                           {"method", method_name(c.integrator.method)}};
    j["zero_tol"] = c.zero_tol;
    j["adr_threshold"] = c.adr_threshold;
    j["plateau"] = Json{{"signal", c.plateau_signal},
                        {"eps_slope", c.plateau_eps},
                        {"delta", c.plateau_delta},
                        {"thermal_reference",
                         c.has_thermal_reference ? Json(c.thermal_reference) : Json()}};
    j["alphas"] = c.alphas;
    j["n_min"] = c.n_min;
    j["n_max"] = c.n_max;
    j["seed"] = c.seed;
    return j.dump(2) + "\n";
}

double config_alpha(const ScenarioConfig& c) {
    SpatialModel m;
    m.kind = parse_spatial_kind(c.spatial_model);
    m.alpha_fixed = c.alpha;
    return spatial_correlation(m, c.r, c.xi, c.omega);
}

RateSet config_rates(const ScenarioConfig& c) {
    return unit_relaxation_rates(c.beta_omega0, config_alpha(c));
}

DensityMatrix config_initial_state(const ScenarioConfig& c) {
    if (c.initial_state == "maximally_mixed") return maximally_mixed(c.n_spins);
    if (c.initial_state == "all_up") return all_up(c.n_spins);
    if (c.initial_state == "all_down") return all_down(c.n_spins);
    if (c.initial_state == "singlet") {
        if (c.n_spins != 2)
            throw std::invalid_argument("config_initial_state: singlet requires n_spins = 2");
        return singlet();
    }
    if (c.initial_state == "dicke") {
        const DickeBasis basis = build_dicke_basis(c.n_spins);
        return dicke_state(basis, c.dicke_two_j, c.dicke_copy, c.dicke_two_m);
    }
    if (c.initial_state == "custom") {
        if (!c.has_custom_initial)
            throw std::invalid_argument("config_initial_state: custom state needs initial_matrix");
        DensityMatrix rho{c.n_spins, c.custom_initial};
        rho.validate(1e-8);
        return rho;
    }
    throw std::invalid_argument("config_initial_state: unknown preset '" + c.initial_state +
                                "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
    out.imbue(std::locale::classic());
    for (std::size_t k = 0; k < header.size(); ++k)
        out << (k ? "," : "") << header[k];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_csv: row width differs from header");
        for (std::size_t k = 0; k < row.size(); ++k)
            out << (k ? "," : "") << row[k];
        out << "\n";
    }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    if (traj.times.empty()) throw std::invalid_argument("write_trajectory_csv: empty run");
    std::vector<std::string> header{"t"};
    for (const auto& [key, value] : traj.observables.front()) header.push_back(key);
    const bool with_state_measures = !traj.purity.empty();
    if (with_state_measures) {
        header.push_back("purity");
        header.push_back("entropy");
    }
    header.push_back("conserved_drift");

    std::vector<std::vector<std::string>> rows;
    rows.reserve(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::vector<std::string> row{format_double(traj.times[k])};
        for (const auto& [key, value] : traj.observables[k]) row.push_back(format_double(value));
        if (with_state_measures) {
            row.push_back(format_double(traj.purity[k]));
            row.push_back(format_double(traj.entropy[k]));
        }
        row.push_back(format_double(traj.conserved_drift[k]));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

void write_collective_csv(const std::string& path, const CollectiveTrajectory& traj) {
    if (traj.times.empty()) throw std::invalid_argument("write_collective_csv: empty run");
    std::vector<std::string> header{"t"};
    for (int k = 0; k <= traj.two_j; ++k) {
        const int two_m = -traj.two_j + 2 * k;
        header.push_back("P_2M=" + std::to_string(two_m));
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        std::vector<std::string> row{format_double(traj.times[s])};
        for (Eigen::Index k = 0; k < traj.populations[s].size(); ++k)
            row.push_back(format_double(traj.populations[s](k)));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

void write_alpha_sweep_csv(const std::string& path,
                           const std::vector<std::pair<double, double>>& sweep,
                           const std::vector<int>& zero_counts,
                           const std::vector<std::string>& classifications) {
    if (sweep.size() != zero_counts.size() || sweep.size() != classifications.size())
        throw std::invalid_argument("write_alpha_sweep_csv: column lengths differ");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < sweep.size(); ++k)
        rows.push_back({format_double(sweep[k].first), format_double(sweep[k].second),
                        std::to_string(zero_counts[k]), classifications[k]});
    write_csv(path, {"alpha", "adr", "zero_count", "classification"}, rows);
}

void write_entropy_scaling_csv(const std::string& path,
                               const std::vector<EntropyScalingResult>& results) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& res : results) {
        for (std::size_t k = 0; k < res.n_spins.size(); ++k)
            rows.push_back({res.regime, std::to_string(res.n_spins[k]),
                            format_double(res.entropy[k]),
                            format_double(res.entropy[k] / res.n_spins[k])});
    }
    write_csv(path, {"regime", "n_spins", "entropy", "entropy_per_spin"}, rows);
}

std::string spectral_report_to_json(const SpectralReport& rep) {
    std::vector<std::complex<double>> evs = rep.eigenvalues;
    std::sort(evs.begin(), evs.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    Json j;
    j["zero_count"] = rep.zero_count;
    j["adr"] = rep.adr;
    j["zero_tol"] = rep.zero_tol;
    j["cluster_gap_ratio"] = rep.cluster_gap_ratio;
    Json arr = Json::array();
    for (const auto& ev : evs) arr.push_back(Json::array({ev.real(), ev.imag()}));
    j["eigenvalues"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string regime_report_to_json(const RegimeReport& rep) {
    Json j;
    j["classification"] = rep.classification;
    j["zero_count"] = rep.zero_count;
    j["adr"] = rep.adr;
    j["adr_threshold"] = rep.adr_threshold;
    j["conserved_pair_count"] = rep.conserved_pair_count;
    j["steady_state_family"] = rep.steady_state_family;
    return j.dump(2) + "\n";
}

std::string plateau_report_to_json(const PlateauReport& rep) {
    Json j;
    j["detected"] = rep.detected;
    j["stable"] = rep.stable;
    j["t_pre"] = rep.t_pre;
    j["t_R"] = rep.t_R;
    j["plateau_value"] = rep.plateau_value;
    j["final_value"] = rep.final_value;
    return j.dump(2) + "\n";
}

std::string state_to_json(const DensityMatrix& rho) {
    Json j;
    j["n_spins"] = rho.n_spins;
    j["matrix"] = matrix_to_json(rho.data);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_text_file: cannot open '" + path + "'");
    out << content;
}

}  // namespace spinbath
