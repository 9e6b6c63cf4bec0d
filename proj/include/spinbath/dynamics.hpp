// dynamics.hpp - time evolution (full, reduced, collective) and plateau detection
#pragma once

#include "spinbath/bath.hpp"
#include "spinbath/liouvillian.hpp"
#include "spinbath/spin_ops.hpp"

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spinbath {

enum class EvolveMethod { automatic, adaptive_rk, spectral };

struct IntegratorConfig {
    double rel_tol{1e-9};
    double abs_tol{1e-11};
    double t_max{10.0};
    double max_step{0.0};      // 0 = no cap
    double record_every{0.0};  // 0 = t_max / 200; linear sampling grid
    bool log_record{false};    // log-spaced grid from record_start to t_max
    double record_start{1e-2};
    int samples{400};  // sample count for the log grid
    EvolveMethod method{EvolveMethod::automatic};
};

// Sampled run. purity/entropy are filled by evolve_full only; conserved_drift
// is the max over pair correlators of |<s_i.s_j>(t) - <s_i.s_j>(0)|.
struct Trajectory {
    std::vector<double> times;
    std::vector<ObservableSet> observables;
    std::vector<double> purity;
    std::vector<double> entropy;
    std::vector<double> conserved_drift;
};

// Populations of one maximal-J ladder, index k corresponds to label
// M = -J + k (so P[0] is the pole the emission channel pumps toward).
struct BlockPopulations {
    int two_j{0};
    Eigen::VectorXd P;
};

struct CollectiveTrajectory {
    int two_j{0};
    std::vector<double> times;
    std::vector<Eigen::VectorXd> populations;
};

struct PlateauConfig {
    double eps_slope{-1.0};  // |ds/dt| threshold; < 0 selects 1e-4 * range
    double delta{-1.0};      // level separation; < 0 selects 1% of range
    int min_samples{3};
    // Needed to flag a plateau that persists to t_max (uniform-correlation
    // case, where the trajectory alone cannot distinguish a stuck plateau
    // from completed relaxation).
    std::optional<double> thermal_reference;
};

struct PlateauReport {
    bool detected{false};
    bool stable{false};  // plateau persists to the end of the run
    double t_pre{0.0};   // plateau entry
    double t_R{0.0};     // plateau exit (t_max when stable)
    double plateau_value{0.0};
    double final_value{0.0};
};

// Observer invoked at every recorded sample of evolve_full.
using SampleObserver = std::function<void(double, const DensityMatrix&)>;

// Integrates d vec(rho)/dt = L vec(rho). automatic picks the eigendecomposition
// propagator for long horizons (t_max * R1 > 100) or log-spaced grids, falling
// back to adaptive Runge-Kutta when the eigenbasis reconstruction is poor.
// Trace, Hermiticity and positivity are asserted at every sample (1e-8).
Trajectory evolve_full(const Superoperator& L, const DensityMatrix& rho0,
                       const IntegratorConfig& cfg, const SampleObserver& observer = {});

// Closed three-variable system for two spins, x = (Mz, Mzz, Mc):
//   dMz/dt  = R1 (2 M0 - 2 Mz + 4 M0 a Mc)
//   dMzz/dt = R1 (M0 Mz - 4 Mzz + 2 a Mc)
//   dMc/dt  = R1 (-M0 a Mz + 4 a Mzz - 2 Mc)
// init must provide keys Mz, Mzz, Mc.
Trajectory evolve_two_spin_reduced(const RateSet& rates, const ObservableSet& init,
                                   const IntegratorConfig& cfg);

// Closed five-variable system for three spins, x = (Mz, Mc, Mzz, Mcz, Mzzz):
//   dMz/dt   = R1 (3 M0 - 2 Mz + 4 M0 a Mc)
//   dMc/dt   = R1 (-2 M0 a Mz - 2 Mc + 4 a Mzz - 4 M0 a Mcz)
//   dMzz/dt  = R1 (2 M0 Mz + 2 a Mc - 4 Mzz + 4 M0 a Mcz)
//   dMcz/dt  = R1 (M0 (1 + a) Mc - 2 M0 a Mzz - 4 (1 + a) Mcz + 12 a Mzzz)
//   dMzzz/dt = R1 (M0 Mzz + 2 a Mcz - 6 Mzzz)
// At a = 1 the combination Mc + Mzz is a constant of motion.
Trajectory evolve_three_spin_reduced(const RateSet& rates, const ObservableSet& init,
                                     const IntegratorConfig& cfg);

// Ladder rate equation within one J sector (alpha = 1), index M = -J + k:
//   dP_M/dt = -zeta(M) (A P_M - B P_{M+1}) - zeta(-M) (B P_M - A P_{M-1}),
//   zeta(M) = 2 (J - M) (J + M + 1).
// Steady state satisfies P_M / P_{M-1} = exp(-beta*omega0).
CollectiveTrajectory evolve_collective(int two_j, const RateSet& rates,
                                       const Eigen::VectorXd& p0,
                                       const IntegratorConfig& cfg);

// Flags an interior interval that is flat (|ds/dt| < eps_slope) while still
// separated from the final value by more than delta. If none exists and a
// thermal reference is supplied, a terminal flat interval away from the
// reference is reported as a stable plateau with t_R = t_max.
PlateauReport detect_plateau(const Trajectory& traj, const std::string& signal,
                             const PlateauConfig& cfg = {});

}  // namespace spinbath
