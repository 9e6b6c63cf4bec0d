// reproduce.cpp
#include "spinbath/reproduce.hpp"

#include "spinbath/bath.hpp"
#include "spinbath/dicke.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/equilibria.hpp"
#include "spinbath/io.hpp"
#include "spinbath/liouvillian.hpp"
#include "spinbath/spin_ops.hpp"

#include "json.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace spinbath {

namespace {

constexpr double kLn9 = 2.1972245773362196;  // beta*omega0 with M0 = 0.8
constexpr double kLn4 = 1.3862943611198906;  // beta*omega0 with M0 = 0.6

// Pinned acceptance tolerances. These are the pass/fail thresholds of the
// scripted criteria; loosening them is never the fix for a red run.
constexpr double kTolSteadyWeak = 1e-6;
constexpr double kTolSteadyUniform = 5e-5;
constexpr double kTolFormula = 1e-12;
constexpr double kTolPlateau = 1e-3;
constexpr double kTolRoundTrip = 1e-10;
constexpr double kTolEntropyPerSpin = 1e-4;
constexpr double kTolEntropyLimit = 1e-5;
constexpr double kTolEntropyCoarse = 1e-3;
constexpr double kTolEntropyNumeric = 1e-6;
constexpr double kTolScaling = 1e-6;
constexpr double kTolTrajectory = 1e-6;
constexpr double kTolSteadyMatch = 1e-8;
constexpr double kTolDrift = 1e-8;
constexpr double kTolBlockTraceDrift = 1e-10;
constexpr double kTolConservedRate = 1e-10;
constexpr double kTolStructural = 1e-10;
constexpr double kTolOrthogonality = 1e-12;
constexpr double kTolBlockCoupling = 1e-9;
constexpr double kTolCommutator = 1e-9;
constexpr double kTolConcurrencePair = 1e-9;
constexpr double kTolConcurrenceExact = 1e-12;
constexpr double kMinTimescaleRatio = 100.0;
constexpr double kMinGapRatio = 1e3;
constexpr double kMinCouplingControl = 1e-3;

CheckLine approx(std::string label, double computed, double expected, double tol) {
    CheckLine c;
    c.label = std::move(label);
    c.expected = expected;
    c.computed = computed;
    c.tolerance = tol;
    c.pass = std::isfinite(computed) && std::abs(computed - expected) <= tol;
    return c;
}

// Pass when computed <= bound (residuals, drifts); the bound is the tolerance.
CheckLine below(std::string label, double computed, double bound) {
    CheckLine c;
    c.label = std::move(label);
    c.expected = 0.0;
    c.computed = computed;
    c.tolerance = bound;
    c.pass = std::isfinite(computed) && computed <= bound;
    return c;
}

// Pass when computed >= floor (separation ratios).
CheckLine over(std::string label, double computed, double floor_value) {
    CheckLine c;
    c.label = std::move(label);
    c.expected = floor_value;
    c.computed = computed;
    c.tolerance = 0.0;
    c.pass = std::isfinite(computed) && computed >= floor_value;
    return c;
}

CheckLine truth(std::string label, bool ok) {
    return approx(std::move(label), ok ? 1.0 : 0.0, 1.0, 0.0);
}

void finish(CriterionResult& r) {
    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const CheckLine& c) { return c.pass; });
}

std::string tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

DensityMatrix x_polarized(int n) {
    const Eigen::Index dim = register_dim(n);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
    return pure_state(n, psi);
}

std::vector<double> density_eigenvalues_desc(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.data);
    std::vector<double> vals(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return vals;
}

// Count of dissipative zero modes per register size at full cross-site weight:
// sum over J sectors of (sector multiplicity)^2.
CriterionResult criterion_zero_modes() {
    CriterionResult r;
    r.name = "zero-mode-degeneracy";
    const std::array<int, 4> expected{2, 5, 14, 42};
    for (int n = 2; n <= 5; ++n) {
        const auto L = build_liouvillian(n, unit_relaxation_rates(kLn9, 1.0));
        const auto rep = spectrum(L);
        r.checks.push_back(approx("uniform_zero_count_n" + std::to_string(n),
                                  double(rep.zero_count), double(expected[n - 2]), 0.0));
    }
    const auto L = build_liouvillian(2, unit_relaxation_rates(kLn9, 0.5));
    r.checks.push_back(
        approx("partial_zero_count_n2", double(spectrum(L).zero_count), 1.0, 0.0));
    finish(r);
    return r;
}

// Partial cross-site weight: unique steady state, equal to the product Gibbs
// state, reached both by the kernel solve and by long-time propagation.
CriterionResult criterion_weak_gibbs() {
    CriterionResult r;
    r.name = "partial-correlation-gibbs";
    const auto rates = unit_relaxation_rates(kLn9, 0.5);
    const auto L = build_liouvillian(2, rates);

    const auto steady = steady_state(L);
    const auto obs = extract_observables(steady.rho);
    r.checks.push_back(approx("kernel_Mz", obs.at("Mz"), 0.8, kTolSteadyWeak));
    r.checks.push_back(approx("kernel_Mzz", obs.at("Mzz"), 0.16, kTolSteadyWeak));
    r.checks.push_back(approx("kernel_Mc", obs.at("Mc"), 0.0, kTolSteadyWeak));
    r.checks.push_back(below("kernel_residual", steady.residual, kTolSteadyMatch));

    IntegratorConfig cfg;
    cfg.t_max = 40.0;
    cfg.method = EvolveMethod::spectral;
    const auto traj = evolve_full(L, maximally_mixed(2), cfg);
    const auto& last = traj.observables.back();
    r.checks.push_back(approx("evolved_Mz", last.at("Mz"), 0.8, kTolSteadyWeak));
    r.checks.push_back(approx("evolved_Mzz", last.at("Mzz"), 0.16, kTolSteadyWeak));
    r.checks.push_back(approx("evolved_Mc", last.at("Mc"), 0.0, kTolSteadyWeak));

    const auto gibbs = gibbs_state(2, kLn9);
    r.checks.push_back(below("gibbs_distance", (steady.rho.data - gibbs.data).norm(),
                             kTolSteadyMatch));
    finish(r);
    return r;
}

// Uniform cross-site weight from the maximally mixed state: the steady state
// matches the pair-constrained ensemble at F = 0.
CriterionResult criterion_uniform_gge() {
    CriterionResult r;
    r.name = "uniform-correlation-gge";
    const auto rates = unit_relaxation_rates(kLn9, 1.0);
    const auto L = build_liouvillian(2, rates);
    const auto steady = steady_state(L, maximally_mixed(2));
    const auto obs = extract_observables(steady.rho);
    r.checks.push_back(approx("steady_Mz", obs.at("Mz"), 60.0 / 91.0, kTolSteadyUniform));
    r.checks.push_back(approx("steady_Mzz", obs.at("Mzz"), 8.0 / 91.0, kTolSteadyUniform));
    r.checks.push_back(approx("steady_Mc", obs.at("Mc"), -8.0 / 91.0, kTolSteadyUniform));
    r.checks.push_back(below("steady_residual", steady.residual, kTolSteadyMatch));

    const auto gge = two_spin_gge_observables(0.0, rates.M0);
    r.checks.push_back(approx("ensemble_Mz", gge.Mz, 60.0 / 91.0, kTolFormula));
    r.checks.push_back(approx("ensemble_Mzz", gge.Mzz, 8.0 / 91.0, kTolFormula));
    r.checks.push_back(approx("ensemble_Mc", gge.Mc, -8.0 / 91.0, kTolFormula));
    finish(r);
    return r;
}

// Near-uniform weight from the fully polarized pair: purity drops fast onto a
// long-lived plateau at the single-ladder value, then decays to the product
// Gibbs value on a timescale more than two orders of magnitude later.
CriterionResult criterion_prethermal_cascade() {
    CriterionResult r;
    r.name = "prethermal-plateau-cascade";
    const auto rates = unit_relaxation_rates(kLn9, 0.9999);
    const auto L = build_liouvillian(2, rates);

    IntegratorConfig cfg;
    cfg.t_max = 1e5;
    cfg.log_record = true;
    cfg.record_start = 1e-2;
    cfg.samples = 600;
    const auto traj = evolve_full(L, all_up(2), cfg);
    const auto plateau = detect_plateau(traj, "purity");

    r.checks.push_back(truth("plateau_detected", plateau.detected));
    r.checks.push_back(approx("plateau_purity", plateau.plateau_value, 0.8022, kTolPlateau));
    r.checks.push_back(approx("final_purity", plateau.final_value, 0.6724, kTolPlateau));
    const double ratio = plateau.t_pre > 0.0 ? plateau.t_R / plateau.t_pre : 0.0;
    r.checks.push_back(over("timescale_separation", ratio, kMinTimescaleRatio));

    r.checks.push_back(approx("plateau_target_formula", purity_analytic_principal(2, kLn9),
                              6643.0 / 8281.0, kTolFormula));
    r.checks.push_back(approx("relaxed_target_formula", purity_analytic_thermal(2, kLn9),
                              0.6724, kTolFormula));

    // Control: at alpha = 0.5 relaxation is single-stage, no interior plateau.
    const auto L2 = build_liouvillian(2, unit_relaxation_rates(kLn9, 0.5));
    IntegratorConfig cfg2;
    cfg2.t_max = 1e3;
    cfg2.log_record = true;
    cfg2.record_start = 1e-2;
    cfg2.samples = 400;
    const auto traj2 = evolve_full(L2, all_up(2), cfg2);
    r.checks.push_back(truth("no_plateau_when_gapped", !detect_plateau(traj2, "purity").detected));
    finish(r);
    return r;
}

// The pair-quantity multiplier solves the constraint exactly: building the
// ensemble from the multiplier returns the requested F and the closed-form
// observables across the admissible range.
CriterionResult criterion_gge_roundtrip() {
    CriterionResult r;
    r.name = "gge-multiplier-roundtrip";
    r.checks.push_back(approx("multiplier_at_F0", gge_lagrange_multiplier(0.0, kLn9),
                              1.2150226405125208, kTolFormula));
    const double m0 = unit_relaxation_rates(kLn9, 1.0).M0;
    for (const double f : {-0.5, -0.25, 0.0, 0.2}) {
        const double l1 = gge_lagrange_multiplier(f, kLn9);
        const auto rho = gge_density_matrix(l1, kLn9);
        const auto obs = extract_observables(rho);
        const auto target = two_spin_gge_observables(f, m0);
        const std::string p = "F(" + tag(f) + ")_";
        r.checks.push_back(approx(p + "fill", obs.at("F"), f, kTolRoundTrip));
        r.checks.push_back(approx(p + "Mz", obs.at("Mz"), target.Mz, kTolRoundTrip));
        r.checks.push_back(approx(p + "Mzz", obs.at("Mzz"), target.Mzz, kTolRoundTrip));
        r.checks.push_back(approx(p + "Mc", obs.at("Mc"), target.Mc, kTolRoundTrip));
    }
    finish(r);
    return r;
}

// Entropy values: extensive for independent relaxation, saturating for the
// collective ladder, and block-mixture values for initial-condition-dependent
// steady states (closed forms against numeric block-thermal construction).
CriterionResult criterion_entropy_benchmarks() {
    CriterionResult r;
    r.name = "entropy-benchmarks";
    for (int n = 2; n <= 5; ++n)
        r.checks.push_back(approx("thermal_per_spin_n" + std::to_string(n),
                                  entropy_analytic_thermal(n, kLn4) / n, 0.5004,
                                  kTolEntropyPerSpin));
    r.checks.push_back(approx("ladder_limit", entropy_analytic_principal(kLn4), 0.74978,
                              kTolEntropyLimit));
    r.checks.push_back(approx("ladder_n50_vs_limit", entropy_analytic_principal(kLn4, 50),
                              entropy_analytic_principal(kLn4), 1e-8));

    const double s_j1 = entropy_analytic_principal(kLn9, 2);
    const double s_j3h = entropy_analytic_principal(kLn9, 3);
    const double s_j1h = entropy_analytic_principal(kLn9, 1);
    r.checks.push_back(approx("ladder_j1", s_j1, 0.382, kTolEntropyCoarse));
    r.checks.push_back(approx("ladder_j3half", s_j3h, 0.391, kTolEntropyCoarse));
    r.checks.push_back(approx("ladder_j1half", s_j1h, 0.325, kTolEntropyCoarse));

    const auto mix2 = entropy_mixture({0.5, 0.5}, {s_j1, 0.0});
    const auto mix3 = entropy_mixture({0.5, 0.5}, {s_j3h, s_j1h});
    r.checks.push_back(approx("pair_mixture", mix2.value, 0.884, kTolEntropyCoarse));
    r.checks.push_back(approx("triple_mixture", mix3.value, 1.051, kTolEntropyCoarse));

    const auto basis2 = build_dicke_basis(2);
    const DensityMatrix rho2{2, 0.5 * (all_up(2).data + singlet().data)};
    const auto bt2 = block_thermal_state(rho2, basis2, kLn9);
    r.checks.push_back(approx("pair_mixture_numeric", von_neumann_entropy(bt2.rho),
                              0.884151644123351, kTolEntropyNumeric));

    const auto basis3 = build_dicke_basis(3);
    const DensityMatrix rho3{3, 0.5 * (all_up(3).data + dicke_state(basis3, 1, 1, 1).data)};
    const auto bt3 = block_thermal_state(rho3, basis3, kLn9);
    r.checks.push_back(approx("triple_mixture_numeric", von_neumann_entropy(bt3.rho),
                              1.0511606219221328, kTolEntropyNumeric));

    // Saturation of the collective ladder entropy with system size, computed
    // by relaxing the fully polarized state on each ladder.
    const auto scaling = entropy_scaling("uniform", 2, 5, kLn4);
    for (std::size_t k = 0; k < scaling.n_spins.size(); ++k)
        r.checks.push_back(approx("uniform_scaling_n" + std::to_string(scaling.n_spins[k]),
                                  scaling.entropy[k],
                                  entropy_analytic_principal(kLn4, scaling.n_spins[k]),
                                  kTolScaling));
    finish(r);
    return r;
}

// The reduced moment systems and the single-ladder rate equation reproduce the
// full register dynamics wherever they apply.
CriterionResult criterion_equivalences() {
    CriterionResult r;
    r.name = "reduced-model-equivalence";

    for (const double alpha : {0.5, 1.0}) {
        const auto rates = unit_relaxation_rates(kLn9, alpha);
        const auto L = build_liouvillian(2, rates);
        const std::array<std::pair<const char*, DensityMatrix>, 3> states{
            std::pair<const char*, DensityMatrix>{"mixed", maximally_mixed(2)},
            {"all_up", all_up(2)},
            {"singlet", singlet()}};
        for (const auto& [name, rho0] : states) {
            IntegratorConfig cfg;
            cfg.t_max = 20.0;
            const auto full = evolve_full(L, rho0, cfg);
            const auto red = evolve_two_spin_reduced(rates, extract_observables(rho0), cfg);
            double diff = std::numeric_limits<double>::infinity();
            if (full.times.size() == red.times.size()) {
                diff = 0.0;
                for (std::size_t k = 0; k < full.times.size(); ++k)
                    for (const char* key : {"Mz", "Mzz", "Mc"})
                        diff = std::max(diff, std::abs(full.observables[k].at(key) -
                                                       red.observables[k].at(key)));
            }
            r.checks.push_back(below(std::string("pair_") + name + "_a" + tag(alpha), diff,
                                     kTolTrajectory));
        }
    }

    // Single-ladder rate equation vs the full register at uniform weight.
    const auto rates1 = unit_relaxation_rates(kLn9, 1.0);
    const auto L1 = build_liouvillian(2, rates1);
    IntegratorConfig lcfg;
    lcfg.t_max = 50.0;
    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(3);
    p0(0) = 1.0;
    const auto ladder = evolve_collective(2, rates1, p0, lcfg);
    const Eigen::VectorXd pf = ladder.populations.back();
    r.checks.push_back(approx("ladder_P0", pf(0), 81.0 / 91.0, kTolSteadyMatch));
    r.checks.push_back(approx("ladder_P1", pf(1), 9.0 / 91.0, kTolSteadyMatch));
    r.checks.push_back(approx("ladder_P2", pf(2), 1.0 / 91.0, kTolSteadyMatch));

    const auto steady_up = steady_state(L1, all_up(2));
    const auto vals = density_eigenvalues_desc(steady_up.rho);
    const std::array<double, 4> expect_vals{81.0 / 91.0, 9.0 / 91.0, 1.0 / 91.0, 0.0};
    for (std::size_t k = 0; k < expect_vals.size(); ++k)
        r.checks.push_back(approx("steady_weight_" + std::to_string(k), vals[k],
                                  expect_vals[k], kTolSteadyMatch));

    const auto steady_singlet = steady_state(L1, singlet());
    r.checks.push_back(below("singlet_is_dark",
                             (steady_singlet.rho.data - singlet().data).norm(),
                             kTolSteadyMatch));

    // Three-spin moment closure against the full register.
    for (const double alpha : {0.6, 1.0}) {
        const auto rates3 = unit_relaxation_rates(kLn9, alpha);
        const auto L3 = build_liouvillian(3, rates3);
        Eigen::MatrixXcd prod = Eigen::MatrixXcd::Zero(8, 8);
        for (int b = 0; b < 8; ++b) {
            double w = 1.0;
            for (int s = 0; s < 3; ++s) w *= ((b >> s) & 1) ? 0.3 : 0.7;
            prod(b, b) = w;
        }
        const std::array<std::pair<const char*, DensityMatrix>, 2> states{
            std::pair<const char*, DensityMatrix>{"product", DensityMatrix{3, prod}},
            {"all_up", all_up(3)}};
        for (const auto& [name, rho0] : states) {
            IntegratorConfig cfg;
            cfg.t_max = 10.0;
            const auto full = evolve_full(L3, rho0, cfg);
            const auto red = evolve_three_spin_reduced(rates3, extract_observables(rho0), cfg);
            double diff = std::numeric_limits<double>::infinity();
            if (full.times.size() == red.times.size()) {
                diff = 0.0;
                for (std::size_t k = 0; k < full.times.size(); ++k)
                    for (const char* key : {"Mz", "Mc", "Mzz", "Mcz", "Mzzz"})
                        diff = std::max(diff, std::abs(full.observables[k].at(key) -
                                                       red.observables[k].at(key)));
            }
            r.checks.push_back(below(std::string("triple_") + name + "_a" + tag(alpha), diff,
                                     kTolTrajectory));
        }
    }
    finish(r);
    return r;
}

// At uniform weight every pair quantity <s_i.s_j> is conserved: the adjoint
// generator annihilates each pair correlator and propagated trajectories hold
// their initial pair values.
CriterionResult criterion_conservation() {
    CriterionResult r;
    r.name = "uniform-conservation-laws";
    for (int n = 2; n <= 4; ++n) {
        const auto rates = unit_relaxation_rates(kLn9, 1.0);
        const auto L = build_liouvillian(n, rates);

        const auto pair_rates = conserved_quantity_rates(L);
        int conserved = 0;
        double worst = 0.0;
        for (const auto& [pair, rate] : pair_rates) {
            if (rate < kTolConservedRate) ++conserved;
            worst = std::max(worst, rate);
        }
        r.checks.push_back(approx("conserved_pairs_n" + std::to_string(n), double(conserved),
                                  double(n * (n - 1) / 2), 0.0));
        r.checks.push_back(below("adjoint_rate_n" + std::to_string(n), worst,
                                 kTolConservedRate));

        IntegratorConfig cfg;
        cfg.t_max = 50.0;
        cfg.method = EvolveMethod::spectral;
        const auto traj = evolve_full(L, x_polarized(n), cfg);
        const double drift =
            *std::max_element(traj.conserved_drift.begin(), traj.conserved_drift.end());
        r.checks.push_back(below("pair_drift_n" + std::to_string(n), drift, kTolDrift));
    }

    // Control: at partial weight no pair quantity survives.
    const auto L2 = build_liouvillian(2, unit_relaxation_rates(kLn9, 0.5));
    r.checks.push_back(over("pair_decays_when_partial",
                            conserved_quantity_rates(L2).at({1, 2}), kMinCouplingControl));
    finish(r);
    return r;
}

// Structural properties of the generator and the collective basis.
CriterionResult criterion_invariants() {
    CriterionResult r;
    r.name = "structural-invariants";

    for (const auto& [n, alpha] : std::array<std::pair<int, double>, 4>{
             std::pair<int, double>{2, 0.5}, {2, 1.0}, {3, 0.7}, {3, 1.0}}) {
        const auto L = build_liouvillian(n, unit_relaxation_rates(kLn9, alpha));
        const Eigen::VectorXd vid =
            vectorize(Eigen::MatrixXcd::Identity(L.dim, L.dim)).real();
        const double err = (L.data.transpose() * vid).cwiseAbs().maxCoeff();
        r.checks.push_back(below("trace_preserving_n" + std::to_string(n) + "_a" + tag(alpha),
                                 err, kTolStructural));
    }

    for (int n = 2; n <= 10; ++n) {
        long long states = 0;
        for (int two_l = n % 2; two_l <= n; two_l += 2)
            states += degeneracy(n, two_l) * (two_l + 1);
        r.checks.push_back(approx("sector_dimension_sum_n" + std::to_string(n),
                                  double(states), std::pow(2.0, n), 0.0));
    }
    const std::array<int, 4> kernel_counts{2, 5, 14, 42};
    for (int n = 2; n <= 5; ++n) {
        long long sq = 0;
        for (int two_l = n % 2; two_l <= n; two_l += 2) {
            const long long d = degeneracy(n, two_l);
            sq += d * d;
        }
        r.checks.push_back(approx("multiplicity_square_sum_n" + std::to_string(n), double(sq),
                                  double(kernel_counts[n - 2]), 0.0));
    }

    for (int n = 2; n <= 6; ++n) {
        const auto basis = build_dicke_basis(n);
        const double err = (basis.U.transpose() * basis.U -
                            Eigen::MatrixXd::Identity(basis.U.cols(), basis.U.cols()))
                               .cwiseAbs()
                               .maxCoeff();
        r.checks.push_back(below("basis_orthogonal_n" + std::to_string(n), err,
                                 kTolOrthogonality));
    }

    // Below uniform weight the steady state is the product Gibbs state,
    // independently of the actual alpha value.
    for (const double alpha : {0.3, 0.7}) {
        const auto L = build_liouvillian(3, unit_relaxation_rates(kLn9, alpha));
        const auto steady = steady_state(L);
        r.checks.push_back(below("gibbs_any_partial_a" + tag(alpha),
                                 (steady.rho.data - gibbs_state(3, kLn9).data).norm(),
                                 kTolSteadyMatch));
    }

    // Detailed balance of the ladder weights at uniform weight.
    const auto rates1 = unit_relaxation_rates(kLn9, 1.0);
    const auto L21 = build_liouvillian(2, rates1);
    const auto vals = density_eigenvalues_desc(steady_state(L21, all_up(2)).rho);
    r.checks.push_back(approx("ladder_ratio_top", vals[0] / vals[1], 9.0, 1e-6));
    r.checks.push_back(approx("ladder_ratio_bottom", vals[1] / vals[2], 9.0, 1e-6));

    // Sector traces are constants of motion at uniform weight.
    for (int n = 2; n <= 3; ++n) {
        const auto L = build_liouvillian(n, rates1);
        const auto basis = build_dicke_basis(n);
        const DensityMatrix rho0{
            n, 0.6 * x_polarized(n).data + 0.4 * maximally_mixed(n).data};
        const auto init_traces = block_traces(basis, rho0.data);
        double drift = 0.0;
        const SampleObserver watch = [&](double, const DensityMatrix& rho) {
            const auto tr = block_traces(basis, rho.data);
            for (std::size_t k = 0; k < tr.size(); ++k)
                drift = std::max(drift, std::abs(tr[k] - init_traces[k]));
        };
        IntegratorConfig cfg;
        cfg.t_max = 20.0;
        cfg.method = EvolveMethod::spectral;
        evolve_full(L, rho0, cfg, watch);
        r.checks.push_back(below("sector_trace_drift_n" + std::to_string(n), drift,
                                 kTolBlockTraceDrift));
    }

    for (int n = 2; n <= 3; ++n) {
        const auto L = build_liouvillian(n, rates1);
        r.checks.push_back(over("kernel_cluster_gap_n" + std::to_string(n),
                                spectrum(L).cluster_gap_ratio, kMinGapRatio));
        const auto basis = build_dicke_basis(n);
        r.checks.push_back(below("sector_decoupling_n" + std::to_string(n),
                                 inter_block_coupling_norm(basis, L), kTolBlockCoupling));
        OperatorMatrix total_pair = pair_correlator(n, 1, 2);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (!(i == 1 && j == 2)) total_pair.data += pair_correlator(n, i, j).data;
        r.checks.push_back(below("total_spin_symmetry_n" + std::to_string(n),
                                 symmetry_commutator_norm(L, total_pair), kTolCommutator));
    }

    // Controls at partial weight: sectors couple and the symmetry is broken.
    const auto Lh = build_liouvillian(2, unit_relaxation_rates(kLn9, 0.5));
    const auto basis2 = build_dicke_basis(2);
    r.checks.push_back(over("sector_coupling_when_partial",
                            inter_block_coupling_norm(basis2, Lh), kMinCouplingControl));
    r.checks.push_back(over("symmetry_broken_when_partial",
                            symmetry_commutator_norm(Lh, pair_correlator(2, 1, 2)),
                            kMinCouplingControl));
    finish(r);
    return r;
}

// Pairwise entanglement: exact values on reference states, the closed form
// against the spin-flip construction on random admissible X-form states, and
// absence of entanglement in the polarized-pair steady state.
CriterionResult criterion_entanglement(unsigned long seed) {
    CriterionResult r;
    r.name = "pairwise-entanglement";
    r.checks.push_back(approx("thermal_pair", concurrence(gibbs_state(2, kLn9)), 0.0,
                              kTolConcurrenceExact));
    r.checks.push_back(approx("singlet", concurrence(singlet()), 1.0, kTolConcurrenceExact));
    r.checks.push_back(approx("singlet_closed_form", concurrence_closed_form(0.0, -0.25, -0.5),
                              1.0, kTolConcurrenceExact));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double mzz = 0.5 * (unit(rng) - 0.5);
        const double mz = (2.0 * unit(rng) - 1.0) * 2.0 * (0.25 + mzz);
        const double mc = (2.0 * unit(rng) - 1.0) * (0.25 - mzz);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
        m(0, 0) = 0.25 + 0.5 * mz + mzz;
        m(1, 1) = 0.25 - mzz;
        m(2, 2) = 0.25 - mzz;
        m(3, 3) = 0.25 - 0.5 * mz + mzz;
        m(1, 2) = mc;
        m(2, 1) = mc;
        const DensityMatrix rho{2, m};
        worst = std::max(worst,
                         std::abs(concurrence(rho) - concurrence_closed_form(mz, mzz, mc)));
    }
    r.checks.push_back(below("x_state_closed_form_agreement", worst, kTolConcurrencePair));

    const auto L = build_liouvillian(2, unit_relaxation_rates(kLn9, 1.0));
    const auto steady = steady_state(L, all_up(2));
    const auto obs = extract_observables(steady.rho);
    r.checks.push_back(approx("polarized_steady_Mz", obs.at("Mz"), 80.0 / 91.0,
                              kTolSteadyMatch));
    r.checks.push_back(approx("polarized_steady_Mzz", obs.at("Mzz"), 73.0 / 364.0,
                              kTolSteadyMatch));
    r.checks.push_back(approx("polarized_steady_Mc", obs.at("Mc"), 9.0 / 182.0,
                              kTolSteadyMatch));
    r.checks.push_back(approx("polarized_steady_concurrence", concurrence(steady.rho), 0.0,
                              kTolConcurrenceExact));
    finish(r);
    return r;
}

}  // namespace

EntropyScalingResult entropy_scaling(const std::string& regime, int n_min, int n_max,
                                     double beta_omega0) {
    if (n_min < 1 || n_max < n_min)
        throw std::invalid_argument("entropy_scaling: need 1 <= n_min <= n_max");
    EntropyScalingResult out;
    out.regime = regime;
    if (regime == "thermal") {
        for (int n = n_min; n <= n_max; ++n) {
            out.n_spins.push_back(n);
            out.entropy.push_back(entropy_analytic_thermal(n, beta_omega0));
        }
    } else if (regime == "uniform") {
        const RateSet rates = unit_relaxation_rates(beta_omega0, 1.0);
        for (int n = n_min; n <= n_max; ++n) {
            Eigen::VectorXd p0 = Eigen::VectorXd::Zero(n + 1);
            p0(0) = 1.0;
            IntegratorConfig cfg;
            cfg.t_max = 100.0;
            const auto traj = evolve_collective(n, rates, p0, cfg);
            out.n_spins.push_back(n);
            out.entropy.push_back(entropy_of_populations(traj.populations.back()));
        }
    } else {
        throw std::invalid_argument("entropy_scaling: unknown regime '" + regime + "'");
    }
    return out;
}

std::vector<CriterionResult> run_acceptance_checks(unsigned long seed) {
    const std::array<std::pair<const char*, std::function<CriterionResult()>>, 10> steps{
        std::pair<const char*, std::function<CriterionResult()>>{
            "zero-mode-degeneracy", criterion_zero_modes},
        {"partial-correlation-gibbs", criterion_weak_gibbs},
        {"uniform-correlation-gge", criterion_uniform_gge},
        {"prethermal-plateau-cascade", criterion_prethermal_cascade},
        {"gge-multiplier-roundtrip", criterion_gge_roundtrip},
        {"entropy-benchmarks", criterion_entropy_benchmarks},
        {"reduced-model-equivalence", criterion_equivalences},
        {"uniform-conservation-laws", criterion_conservation},
        {"structural-invariants", criterion_invariants},
        {"pairwise-entanglement", [seed] { return criterion_entanglement(seed); }}};

    std::vector<CriterionResult> out;
    out.reserve(steps.size());
    for (const auto& [name, step] : steps) {
        try {
            out.push_back(step());
        } catch (const std::exception& e) {
            CriterionResult r;
            r.name = name;
            r.pass = false;
            CheckLine c;
            c.label = std::string("exception: ") + e.what();
            c.expected = 1.0;
            c.computed = 0.0;
            c.tolerance = 0.0;
            c.pass = false;
            r.checks.push_back(std::move(c));
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::string acceptance_table(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    std::size_t passed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const auto ok = static_cast<std::size_t>(
            std::count_if(r.checks.begin(), r.checks.end(),
                          [](const CheckLine& c) { return c.pass; }));
        out << (r.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "/" << results.size() << "] "
            << r.name << " (" << ok << "/" << r.checks.size() << " checks)\n";
        if (!r.pass)
            for (const auto& c : r.checks)
                if (!c.pass)
                    out << "     " << c.label << ": computed " << format_double(c.computed)
                        << ", expected " << format_double(c.expected) << ", tolerance "
                        << format_double(c.tolerance) << "\n";
        if (r.pass) ++passed;
    }
    out << "criteria passed: " << passed << "/" << results.size() << "\n";
    return out.str();
}

std::string acceptance_to_json(const std::vector<CriterionResult>& results) {
    nlohmann::ordered_json j;
    j["total"] = results.size();
    j["passed"] = results.size() - static_cast<std::size_t>(count_failures(results));
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json c;
        c["name"] = r.name;
        c["pass"] = r.pass;
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& line : r.checks)
            checks.push_back(nlohmann::ordered_json{{"label", line.label},
                                                    {"expected", line.expected},
                                                    {"computed", line.computed},
                                                    {"tolerance", line.tolerance},
                                                    {"pass", line.pass}});
        c["checks"] = std::move(checks);
        arr.push_back(std::move(c));
    }
    j["criteria"] = std::move(arr);
    return j.dump(2) + "\n";
}

int count_failures(const std::vector<CriterionResult>& results) {
    return static_cast<int>(std::count_if(results.begin(), results.end(),
                                          [](const CriterionResult& r) { return !r.pass; }));
}

}  // namespace spinbath
