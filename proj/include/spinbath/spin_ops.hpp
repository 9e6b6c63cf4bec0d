// spin_ops.hpp - qubit register states, site/collective spin operators, named observables
#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>

namespace spinbath {

// Basis convention: per-site basis {e0 = |up>, e1 = |down>}, sigma_z = diag(1, -1).
// Site 1 is the leftmost tensor factor. The emission channel pumps toward |up>,
// so a single spin relaxes to <sigma_z> = +M0.

struct DensityMatrix {
    int n_spins{1};
    Eigen::MatrixXcd data;

    // Throws if data is not 2^n x 2^n, Hermitian, unit-trace, PSD (all up to tol).
    void validate(double tol = 1e-10) const;
};

struct OperatorMatrix {
    int n_spins{1};
    Eigen::MatrixXcd data;
    std::string label;
};

// Alphabetically ordered so downstream tabular output has a stable column order.
using ObservableSet = std::map<std::string, double>;

enum class SpinComponent { x, y, z, plus, minus };

Eigen::Index register_dim(int n_spins);

// Single-site Pauli operator embedded in the N-spin register; i is 1-based,
// 1 <= i <= n_spins required.
OperatorMatrix site_operator(int n_spins, int i, SpinComponent c);

// Collective operator: J_z = sum_i sigma_z^i / 2, J_+/- = sum_i sigma_+/-^i,
// J_x/J_y the matching Hermitian combinations.
OperatorMatrix collective_operator(int n_spins, SpinComponent c);

// sigma_i . sigma_j = sum_a sigma_a^i sigma_a^j for a in {x, y, z}; i != j, 1-based.
OperatorMatrix pair_correlator(int n_spins, int i, int j);

// Tr(op * rho); throws if the imaginary residue exceeds 1e-10.
double expectation(const DensityMatrix& rho, const OperatorMatrix& op);

// Named observables per register size, using spin-1/2 components I_a = sigma_a/2:
//   N == 2: Mx, My, Mz (single-spin sums), Mxx, Myy, Mzz, Mxy, Mxz, Myz
//           (symmetrized pair sums), plus derived Mc = Mxx + Myy and F = Mzz + Mc.
//   N == 3: Mz, Mc, Mzz (pair sums over i < j), Mcz, Mzzz (triple sums).
//   otherwise: Mz only.
// include_antisymmetric adds the single-spin and pair differences for N == 2 (keys
// prefixed with "A"); they vanish for permutation-symmetric states.
ObservableSet extract_observables(const DensityMatrix& rho, bool include_antisymmetric = false);

// ----------------------------- preset states -----------------------------

DensityMatrix maximally_mixed(int n_spins);
DensityMatrix all_up(int n_spins);
DensityMatrix all_down(int n_spins);
DensityMatrix singlet();  // two spins, (|ud> - |du>)/sqrt(2)
DensityMatrix pure_state(int n_spins, const Eigen::VectorXcd& psi);

// -------------------------- vectorization helpers --------------------------

// Column stacking: vec(X rho Y) = (Y^T kron X) vec(rho).
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim);

}  // namespace spinbath
