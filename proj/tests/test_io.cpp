#include "doctest.h"

#include "spinbath/dynamics.hpp"
#include "spinbath/equilibria.hpp"
#include "spinbath/io.hpp"
#include "spinbath/liouvillian.hpp"
#include "spinbath/spin_ops.hpp"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

using namespace spinbath;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::filesystem::path tmp(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

ScenarioConfig fancy_config() {
    ScenarioConfig cfg;
    cfg.experiment = "evolve";
    cfg.n_spins = 1;
    cfg.spatial_model = "exponential";
    cfg.alpha = 0.25;
    cfg.xi = 2.0;
    cfg.r = 3.0;
    cfg.omega = 0.5;
    cfg.initial_state = "custom";
    cfg.has_custom_initial = true;
    cfg.custom_initial = Eigen::MatrixXcd(2, 2);
    cfg.custom_initial << std::complex<double>(0.3, 0.0), std::complex<double>(0.0, 0.1),
        std::complex<double>(0.0, -0.1), std::complex<double>(0.7, 0.0);
    cfg.dicke_two_j = 1;
    cfg.dicke_copy = 2;
    cfg.dicke_two_m = -1;
    cfg.integrator.method = EvolveMethod::spectral;
    cfg.integrator.log_record = true;
    cfg.integrator.samples = 77;
    cfg.integrator.record_start = 0.5;
    cfg.integrator.t_max = 123.0;
    cfg.zero_tol = 1e-8;
    cfg.adr_threshold = 0.05;
    cfg.plateau_signal = "entropy";
    cfg.plateau_eps = 1e-5;
    cfg.plateau_delta = 0.02;
    cfg.has_thermal_reference = true;
    cfg.thermal_reference = 0.66;
    cfg.alphas = {0.0, 0.5, 1.0};
    cfg.n_min = 2;
    cfg.n_max = 6;
    cfg.seed = 999;
    return cfg;
}

}  // namespace

TEST_SUITE("io") {

    TEST_CASE("config serialization round trips to identity") {
        for (const auto& cfg : {ScenarioConfig{}, fancy_config()}) {
            const std::string once = config_to_json_text(cfg);
            const std::string twice = config_to_json_text(config_from_json_text(once));
            CHECK(once == twice);
        }
        const auto back = config_from_json_text(config_to_json_text(fancy_config()));
        CHECK(back.integrator.method == EvolveMethod::spectral);
        CHECK(back.integrator.samples == 77);
        CHECK(back.has_thermal_reference);
        CHECK(back.thermal_reference == 0.66);
        CHECK(back.alphas.size() == 3);
        CHECK(back.custom_initial(0, 1) == std::complex<double>(0.0, 0.1));
    }

    TEST_CASE("partial config files inherit defaults") {
        const auto cfg = config_from_json_text(R"({"n_spins": 4, "alpha": 0.5})");
        CHECK(cfg.n_spins == 4);
        CHECK(cfg.alpha == 0.5);
        CHECK(cfg.experiment == "run");
        CHECK(cfg.integrator.t_max == 10.0);
        CHECK(!cfg.has_custom_initial);
        CHECK_THROWS_AS(config_from_json_text("not json"), std::exception);
    }

    TEST_CASE("load_config reports missing files") {
        CHECK_THROWS_AS(load_config("/nonexistent/dir/config.json"), std::runtime_error);
    }

    TEST_CASE("effective coupling follows the spatial model") {
        ScenarioConfig cfg;
        cfg.spatial_model = "constant";
        cfg.alpha = 0.7;
        CHECK(config_alpha(cfg) == 0.7);
        cfg.spatial_model = "lorentzian";
        cfg.xi = 1.0;
        cfg.r = 1.0;
        cfg.omega = 2.0;
        CHECK(std::abs(config_alpha(cfg) - 0.2) < 1e-15);
        const auto rates = config_rates(cfg);
        CHECK(rates.R1 == 1.0);
        CHECK(std::abs(rates.M0 - 0.8) < 1e-12);
    }

    TEST_CASE("initial state presets") {
        ScenarioConfig cfg;
        cfg.n_spins = 2;
        cfg.initial_state = "all_up";
        CHECK(std::abs(config_initial_state(cfg).data(0, 0).real() - 1.0) < 1e-15);
        cfg.initial_state = "all_down";
        CHECK(std::abs(config_initial_state(cfg).data(3, 3).real() - 1.0) < 1e-15);
        cfg.initial_state = "singlet";
        CHECK(std::abs(config_initial_state(cfg).data(1, 2).real() + 0.5) < 1e-15);
        cfg.initial_state = "maximally_mixed";
        CHECK(std::abs(config_initial_state(cfg).data(0, 0).real() - 0.25) < 1e-15);

        cfg.n_spins = 3;
        cfg.initial_state = "dicke";
        cfg.dicke_two_j = 1;
        cfg.dicke_copy = 1;
        cfg.dicke_two_m = 1;
        const auto rho = config_initial_state(cfg);
        CHECK(rho.n_spins == 3);
        CHECK(std::abs(expectation(rho, pair_correlator(3, 1, 2)) + 3.0) < 1e-12);

        cfg.initial_state = "singlet";
        CHECK_THROWS_AS(config_initial_state(cfg), std::invalid_argument);
        cfg.initial_state = "custom";
        CHECK_THROWS_AS(config_initial_state(cfg), std::invalid_argument);
        cfg.initial_state = "mystery";
        CHECK_THROWS_AS(config_initial_state(cfg), std::invalid_argument);

        ScenarioConfig one;
        one.n_spins = 1;
        one.initial_state = "custom";
        one.has_custom_initial = true;
        one.custom_initial = Eigen::MatrixXcd(2, 2);
        one.custom_initial << 0.3, 0.0, 0.0, 0.7;
        CHECK(std::abs(config_initial_state(one).data(1, 1).real() - 0.7) < 1e-15);
    }

    TEST_CASE("shortest round-trip double formatting") {
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(2.0) == "2");
        CHECK(format_double(-0.25) == "-0.25");
        for (const double v : {1e-9, 1.0 / 3.0, 0.7497801928250778, -123.456e20}) {
            CHECK(std::stod(format_double(v)) == v);
        }
    }

    TEST_CASE("csv writer emits exact bytes") {
        const auto path = tmp("spinbath_io_basic.csv");
        write_csv(path.string(), {"a", "b"}, {{"1", "2"}, {"3", "x"}});
        CHECK(slurp(path) == "a,b\n1,2\n3,x\n");
        CHECK_THROWS_AS(write_csv(path.string(), {"a", "b"}, {{"1"}}),
                        std::invalid_argument);
        std::filesystem::remove(path);
    }

    TEST_CASE("trajectory csv column layout") {
        IntegratorConfig icfg;
        icfg.t_max = 1.0;
        icfg.record_every = 0.5;
        const auto reduced = evolve_two_spin_reduced(
            unit_relaxation_rates(2.1972245773362196, 0.5),
            ObservableSet{{"Mz", 0.0}, {"Mzz", 0.0}, {"Mc", 0.0}}, icfg);
        const auto rpath = tmp("spinbath_io_reduced.csv");
        write_trajectory_csv(rpath.string(), reduced);
        const std::string rtext = slurp(rpath);
        CHECK(rtext.substr(0, rtext.find('\n')) == "t,Mc,Mz,Mzz,conserved_drift");

        const auto L = build_liouvillian(2, unit_relaxation_rates(2.1972245773362196, 0.5));
        const auto full = evolve_full(L, all_up(2), icfg);
        const auto fpath = tmp("spinbath_io_full.csv");
        write_trajectory_csv(fpath.string(), full);
        const std::string ftext = slurp(fpath);
        CHECK(ftext.substr(0, ftext.find('\n')) ==
              "t,F,Mc,Mx,Mxx,Mxy,Mxz,My,Myy,Myz,Mz,Mzz,purity,entropy,conserved_drift");
        const auto lines = std::count(ftext.begin(), ftext.end(), '\n');
        CHECK(static_cast<std::size_t>(lines) == full.times.size() + 1);
        std::filesystem::remove(rpath);
        std::filesystem::remove(fpath);
    }

    TEST_CASE("collective csv labels levels by 2M") {
        IntegratorConfig icfg;
        icfg.t_max = 1.0;
        icfg.record_every = 0.5;
        Eigen::VectorXd p0 = Eigen::VectorXd::Zero(3);
        p0(0) = 1.0;
        const auto traj =
            evolve_collective(2, unit_relaxation_rates(2.1972245773362196, 1.0), p0, icfg);
        const auto path = tmp("spinbath_io_collective.csv");
        write_collective_csv(path.string(), traj);
        const std::string text = slurp(path);
        CHECK(text.substr(0, text.find('\n')) == "t,P_2M=-2,P_2M=0,P_2M=2");
        std::filesystem::remove(path);
    }

    TEST_CASE("repeated runs produce identical files") {
        const auto make_file = [](const std::filesystem::path& path) {
            const auto L =
                build_liouvillian(2, unit_relaxation_rates(2.1972245773362196, 0.7));
            IntegratorConfig icfg;
            icfg.t_max = 5.0;
            write_trajectory_csv(path.string(), evolve_full(L, all_up(2), icfg));
        };
        const auto p1 = tmp("spinbath_io_det1.csv");
        const auto p2 = tmp("spinbath_io_det2.csv");
        make_file(p1);
        make_file(p2);
        CHECK(slurp(p1) == slurp(p2));
        std::filesystem::remove(p1);
        std::filesystem::remove(p2);
    }

    TEST_CASE("sweep and scaling csv layouts") {
        const auto spath = tmp("spinbath_io_sweep.csv");
        write_alpha_sweep_csv(spath.string(), {{0.0, 1.0}, {1.0, 0.5}}, {1, 2},
                              {"non-integrable", "integrable"});
        const std::string stext = slurp(spath);
        CHECK(stext == "alpha,adr,zero_count,classification\n"
                       "0,1,1,non-integrable\n"
                       "1,0.5,2,integrable\n");

        EntropyScalingResult res;
        res.regime = "thermal";
        res.n_spins = {1, 2};
        res.entropy = {0.5, 1.0};
        const auto epath = tmp("spinbath_io_scaling.csv");
        write_entropy_scaling_csv(epath.string(), {res});
        const std::string etext = slurp(epath);
        CHECK(etext == "regime,n_spins,entropy,entropy_per_spin\n"
                       "thermal,1,0.5,0.5\n"
                       "thermal,2,1,0.5\n");
        std::filesystem::remove(spath);
        std::filesystem::remove(epath);
    }

    TEST_CASE("json emitters produce valid documents") {
        const auto L = build_liouvillian(2, unit_relaxation_rates(2.1972245773362196, 1.0));
        const auto rep = spectrum(L);
        const auto jspec = nlohmann::json::parse(spectral_report_to_json(rep));
        CHECK(jspec.at("zero_count").get<int>() == 2);
        CHECK(jspec.at("eigenvalues").size() == 16);
        CHECK(jspec.at("eigenvalues")[0].size() == 2);
        // Sorted by descending real part: zero modes first.
        CHECK(std::abs(jspec.at("eigenvalues")[0][0].get<double>()) < 1e-9);

        const auto regime = classify_regime(L);
        const auto jreg = nlohmann::json::parse(regime_report_to_json(regime));
        CHECK(jreg.at("classification").get<std::string>() == "integrable");
        CHECK(jreg.at("conserved_pair_count").get<int>() == 1);

        PlateauReport prep;
        prep.detected = true;
        prep.t_pre = 2.0;
        prep.t_R = 300.0;
        prep.plateau_value = 0.8;
        const auto jpl = nlohmann::json::parse(plateau_report_to_json(prep));
        CHECK(jpl.at("detected").get<bool>());
        CHECK(jpl.at("t_R").get<double>() == 300.0);

        const auto jstate = nlohmann::json::parse(state_to_json(gibbs_state(2, 2.1972245773362196)));
        CHECK(jstate.at("n_spins").get<int>() == 2);
        CHECK(jstate.at("matrix").size() == 4);
        CHECK(std::abs(jstate.at("matrix")[0][0][0].get<double>() - 0.81) < 1e-12);
    }

    TEST_CASE("text writer rejects unwritable paths") {
        CHECK_THROWS_AS(write_text_file("/nonexistent/dir/file.txt", "x"),
                        std::runtime_error);
        const auto path = tmp("spinbath_io_text.txt");
        write_text_file(path.string(), "hello\n");
        CHECK(slurp(path) == "hello\n");
        std::filesystem::remove(path);
    }
}
