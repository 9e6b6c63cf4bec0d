// main.cpp - spinbath command line front end
#include "CLI11.hpp"

#include "spinbath/bath.hpp"
#include "spinbath/dicke.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/equilibria.hpp"
#include "spinbath/io.hpp"
#include "spinbath/liouvillian.hpp"
#include "spinbath/measures.hpp"
#include "spinbath/reproduce.hpp"
#include "spinbath/spin_ops.hpp"

#include <Eigen/Dense>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace spinbath;

std::string joined(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

int run_spectrum(const ScenarioConfig& cfg, const std::string& out) {
    const auto L = build_liouvillian(cfg.n_spins, config_rates(cfg));
    const auto rep = spectrum(L, cfg.zero_tol);
    const auto regime = classify_regime(L, cfg.zero_tol, cfg.adr_threshold);
    write_text_file(joined(out, "spectrum.json"), spectral_report_to_json(rep));
    write_text_file(joined(out, "regime.json"), regime_report_to_json(regime));
    std::cout << "n_spins " << cfg.n_spins << ", alpha " << format_double(config_alpha(cfg))
              << ": zero_count " << rep.zero_count << ", adr " << format_double(rep.adr)
              << ", " << regime.classification << "\n"
              << "long-time state: " << regime.steady_state_family << "\n";
    return 0;
}

int run_evolve(const ScenarioConfig& cfg, const std::string& out) {
    const auto rates = config_rates(cfg);

    if (cfg.experiment == "collective") {
        Eigen::VectorXd p0 = Eigen::VectorXd::Zero(cfg.n_spins + 1);
        p0(0) = 1.0;
        const auto traj = evolve_collective(cfg.n_spins, rates, p0, cfg.integrator);
        write_collective_csv(joined(out, "trajectory.csv"), traj);
        std::cout << "collective ladder 2J = " << traj.two_j << ", " << traj.times.size()
                  << " samples written\n";
        return 0;
    }

    Trajectory traj;
    if (cfg.experiment == "reduced") {
        const auto init = extract_observables(config_initial_state(cfg));
        if (cfg.n_spins == 2)
            traj = evolve_two_spin_reduced(rates, init, cfg.integrator);
        else if (cfg.n_spins == 3)
            traj = evolve_three_spin_reduced(rates, init, cfg.integrator);
        else
            throw std::invalid_argument("evolve: reduced closures exist for 2 or 3 spins");
    } else {
        const auto L = build_liouvillian(cfg.n_spins, rates);
        traj = evolve_full(L, config_initial_state(cfg), cfg.integrator);
    }
    write_trajectory_csv(joined(out, "trajectory.csv"), traj);

    const bool have_signal =
        (cfg.plateau_signal == "purity" || cfg.plateau_signal == "entropy")
            ? !traj.purity.empty()
            : traj.observables.front().count(cfg.plateau_signal) > 0;
    if (have_signal) {
        PlateauConfig pc;
        pc.eps_slope = cfg.plateau_eps;
        pc.delta = cfg.plateau_delta;
        if (cfg.has_thermal_reference) pc.thermal_reference = cfg.thermal_reference;
        write_text_file(joined(out, "plateau.json"),
                        plateau_report_to_json(detect_plateau(traj, cfg.plateau_signal, pc)));
    }

    std::cout << traj.times.size() << " samples written; final:";
    for (const auto& [key, value] : traj.observables.back())
        std::cout << " " << key << "=" << format_double(value);
    if (!traj.purity.empty())
        std::cout << " purity=" << format_double(traj.purity.back())
                  << " entropy=" << format_double(traj.entropy.back());
    std::cout << "\n";
    return 0;
}

int run_sweep(const ScenarioConfig& cfg, const std::string& out) {
    std::vector<double> alphas = cfg.alphas;
    if (alphas.empty()) {
        for (int k = 0; k <= 19; ++k) alphas.push_back(k / 20.0);
        alphas.insert(alphas.end(), {0.99, 0.999, 0.9999, 1.0});
    }
    std::vector<std::pair<double, double>> sweep;
    std::vector<int> zero_counts;
    std::vector<std::string> classes;
    for (const double a : alphas) {
        const auto L = build_liouvillian(cfg.n_spins,
                                         unit_relaxation_rates(cfg.beta_omega0, a));
        const auto regime = classify_regime(L, cfg.zero_tol, cfg.adr_threshold);
        sweep.emplace_back(a, regime.adr);
        zero_counts.push_back(regime.zero_count);
        classes.push_back(regime.classification);
    }
    write_alpha_sweep_csv(joined(out, "alpha_sweep.csv"), sweep, zero_counts, classes);
    std::cout << alphas.size() << " alpha points written for n_spins " << cfg.n_spins << "\n";
    return 0;
}

int run_entropy_scaling(const ScenarioConfig& cfg, const std::string& out) {
    const auto thermal = entropy_scaling("thermal", cfg.n_min, cfg.n_max, cfg.beta_omega0);
    const auto uniform = entropy_scaling("uniform", cfg.n_min, cfg.n_max, cfg.beta_omega0);
    write_entropy_scaling_csv(joined(out, "entropy_scaling.csv"), {thermal, uniform});
    std::cout << "n = " << cfg.n_min << ".." << cfg.n_max
              << ": thermal entropy grows per spin ("
              << format_double(thermal.entropy.back() / thermal.n_spins.back())
              << " each), uniform entropy saturates at "
              << format_double(uniform.entropy.back()) << "\n";
    return 0;
}

int run_reproduce(const ScenarioConfig& cfg, const std::string& out) {
    const auto results = run_acceptance_checks(cfg.seed);
    std::cout << acceptance_table(results);
    write_text_file(joined(out, "reproduce.json"), acceptance_to_json(results));
    return count_failures(results);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qubit registers with collective dissipation in a correlated environment"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir{"."};
    double zero_tol_cli = -1.0;
    double adr_threshold_cli = 0.01;
    unsigned long seed_cli = 12345;

    app.add_option("--config", config_path, "JSON scenario file");
    app.add_option("--out", out_dir, "output directory (created if missing)");
    auto* opt_zero = app.add_option("--zero-tol", zero_tol_cli,
                                    "kernel eigenvalue threshold (<= 0 selects automatic)");
    auto* opt_adr = app.add_option("--adr-threshold", adr_threshold_cli,
                                   "nearly-integrable cutoff as a fraction of R1");
    auto* opt_seed = app.add_option("--seed", seed_cli, "seed for randomized checks");

    auto* sub_spectrum =
        app.add_subcommand("spectrum", "eigenvalues, kernel count, regime classification");
    auto* sub_evolve = app.add_subcommand("evolve", "propagate the configured initial state");
    auto* sub_sweep =
        app.add_subcommand("sweep-alpha", "decay rate and kernel count across alpha");
    auto* sub_entropy =
        app.add_subcommand("entropy-scaling", "steady-state entropy against system size");
    auto* sub_reproduce = app.add_subcommand(
        "reproduce-paper", "run the scripted reproduction criteria and report pass/fail");
    for (auto* sub : {sub_spectrum, sub_evolve, sub_sweep, sub_entropy, sub_reproduce})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig cfg = config_path.empty() ? ScenarioConfig{} : load_config(config_path);
        if (opt_zero->count() > 0) cfg.zero_tol = zero_tol_cli;
        if (opt_adr->count() > 0) cfg.adr_threshold = adr_threshold_cli;
        if (opt_seed->count() > 0) cfg.seed = seed_cli;

        std::filesystem::create_directories(out_dir);
        write_text_file(joined(out_dir, "config.json"), config_to_json_text(cfg));

        if (*sub_spectrum) return run_spectrum(cfg, out_dir);
        if (*sub_evolve) return run_evolve(cfg, out_dir);
        if (*sub_sweep) return run_sweep(cfg, out_dir);
        if (*sub_entropy) return run_entropy_scaling(cfg, out_dir);
        if (*sub_reproduce) return run_reproduce(cfg, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
