// equilibria.hpp - product Gibbs, pair-constrained Gibbs ensembles, block-thermal states
#pragma once

#include "spinbath/dicke.hpp"
#include "spinbath/spin_ops.hpp"

#include <Eigen/Dense>
#include <vector>

namespace spinbath {

// Parameters of the two-spin constrained ensemble
// rho ~ exp(bw * J_z - (l1/4) * sum_{i<j} sigma_i . sigma_j).
// F = Mzz + Mc is the conserved pair quantity fixing l1.
struct GGEParams {
    double F{0.0};
    double l1{0.0};
    double beta_omega0{0.0};
};

struct SymmetricPairObservables {
    double Mz{0.0};
    double Mc{0.0};
    double Mzz{0.0};
};

// Steady state of one (J, copy) sector alongside the assembled register state:
// weight * (thermal ladder over M) per sector, cross-sector coherences between
// equal-J copies carried over unchanged from rho0.
struct BlockThermalState {
    std::vector<double> weights;  // per basis.blocks entry, initial block traces
    DensityMatrix rho;
};

// exp(H) for Hermitian H via eigendecomposition.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& h);

// Product Gibbs state ~ exp(bw * sum_i sigma_z^i / 2); per spin
// diag(e^{bw/2}, e^{-bw/2}) / (2 cosh(bw/2)), polarized toward |up>.
DensityMatrix gibbs_state(int n_spins, double beta_omega0);

// Uniform-bath steady-state observables of two spins at pair quantity F:
// Mz = M0 (4F + 3) / (M0^2 + 3), Mc = (4F - M0^2) / (2 (M0^2 + 3)), Mzz = F - Mc.
SymmetricPairObservables two_spin_gge_observables(double F, double M0);

// l1 solving F for the two-spin ensemble at inverse-temperature weight bw:
// exp(l1) = (1 - 4F) (1 + 2 cosh(bw)) / (3 + 4F).
// Boundary F = 1/4 (multiplier diverges) and F <= -3/4 are domain errors.
double gge_lagrange_multiplier(double F, double beta_omega0);

// Two-spin ensemble density matrix for explicit multipliers.
DensityMatrix gge_density_matrix(double l1, double beta_omega0);

// Steady state reached from rho0 under the uniform-correlation generator:
// each (J, copy) sector keeps its initial trace and thermalizes over its M
// ladder with weight ~ exp(bw * M); coherences between equal-J copies relax
// to the same ladder with their initial cross-trace.
BlockThermalState block_thermal_state(const DensityMatrix& rho0, const DickeBasis& basis,
                                      double beta_omega0);

}  // namespace spinbath
