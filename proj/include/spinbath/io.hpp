// io.hpp - scenario configuration and deterministic CSV/JSON serialization
#pragma once

#include "spinbath/bath.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/liouvillian.hpp"
#include "spinbath/measures.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace spinbath {

// One experiment description. Every field has a default, so a config file may
// specify any subset; serialization always emits the full set, which makes
// parse(serialize(cfg)) an identity.
struct ScenarioConfig {
    std::string experiment{"run"};
    int n_spins{2};
    double beta_omega0{2.1972245773362196};  // ln 9, M0 = 0.8

    // Cross-site weight: the constant model uses alpha directly, the others
    // evaluate the profile at separation r with length xi and frequency omega.
    std::string spatial_model{"constant"};
    double alpha{1.0};
    double xi{1.0};
    double r{1.0};
    double omega{1.0};

    // Preset name: maximally_mixed, all_up, all_down, singlet, dicke, custom.
    std::string initial_state{"maximally_mixed"};
    int dicke_two_j{0};
    int dicke_copy{1};
    int dicke_two_m{0};
    bool has_custom_initial{false};
    Eigen::MatrixXcd custom_initial;

    IntegratorConfig integrator{};
    double zero_tol{-1.0};  // <= 0 selects the automatic threshold
    double adr_threshold{0.01};

    std::string plateau_signal{"purity"};
    double plateau_eps{-1.0};
    double plateau_delta{-1.0};
    bool has_thermal_reference{false};
    double thermal_reference{0.0};

    std::vector<double> alphas;  // sweep grid; empty selects a default grid
    int n_min{1};
    int n_max{12};
    unsigned long seed{12345};
};

ScenarioConfig config_from_json_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string config_to_json_text(const ScenarioConfig& cfg);

// Cross-site weight implied by the config's spatial settings.
double config_alpha(const ScenarioConfig& cfg);

// Rates with R1 = 1 at the config's beta*omega0 and effective alpha.
RateSet config_rates(const ScenarioConfig& cfg);

DensityMatrix config_initial_state(const ScenarioConfig& cfg);

// Shortest round-trip decimal formatting, '.' separator, locale-independent.
std::string format_double(double v);

// Generic CSV: UTF-8, comma separated, one header row, LF line endings.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_collective_csv(const std::string& path, const CollectiveTrajectory& traj);
void write_alpha_sweep_csv(const std::string& path,
                           const std::vector<std::pair<double, double>>& sweep,
                           const std::vector<int>& zero_counts,
                           const std::vector<std::string>& classifications);
void write_entropy_scaling_csv(const std::string& path,
                               const std::vector<EntropyScalingResult>& results);

std::string spectral_report_to_json(const SpectralReport& rep);
std::string regime_report_to_json(const RegimeReport& rep);
std::string plateau_report_to_json(const PlateauReport& rep);
std::string state_to_json(const DensityMatrix& rho);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace spinbath
