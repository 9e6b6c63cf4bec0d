// measures.hpp - purity, von Neumann entropy, entanglement measures
#pragma once

#include "spinbath/spin_ops.hpp"

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace spinbath {

struct MixtureEntropy {
    double value{0.0};   // sum_i x_i S_i + mixing
    double mixing{0.0};  // sum_i x_i ln(1/x_i), bounded by ln(#components)
};

struct EntropyScalingResult {
    std::string regime;  // "thermal" or "uniform"
    std::vector<int> n_spins;
    std::vector<double> entropy;
};

double purity(const DensityMatrix& rho);

// Product Gibbs purity ((1 + M0^2)/2)^N with M0 = tanh(bw/2).
double purity_analytic_thermal(int n_spins, double beta_omega0);

// Purity of the thermal ladder over the maximal-J sector, Z(2x)/Z(x)^2 with
// Z(x) = sinh((N+1)x/2)/sinh(x/2).
double purity_analytic_principal(int n_spins, double beta_omega0);

// -sum lambda ln lambda. Eigenvalues in [-1e-10, 0) are clipped to zero;
// anything more negative is an invalid state and throws.
double von_neumann_entropy(const DensityMatrix& rho);

// Same entropy for a bare probability vector (block populations).
double entropy_of_populations(const Eigen::VectorXd& p);

// Product Gibbs entropy for N spins: N [ln(2 cosh(x/2)) - (x/2) tanh(x/2)].
double entropy_analytic_thermal(int n_spins, double beta_omega0);

// Thermal-ladder entropy of the maximal-J sector. With n_spins set, the exact
// finite-N value ln Z - x <m>; without, the N -> infinity limit
// (x/2) coth(x/2) - ln(2 sinh(x/2)).
double entropy_analytic_principal(double beta_omega0,
                                  std::optional<int> n_spins = std::nullopt);

// Entropy of a statistical mixture of mutually orthogonal blocks.
// Zero weights are skipped; weights must be non-negative and sum to 1 (1e-8).
MixtureEntropy entropy_mixture(const std::vector<double>& weights,
                               const std::vector<double>& entropies);

// Two-qubit concurrence via the spin-flipped spectrum of rho rho~.
double concurrence(const DensityMatrix& rho);

// Closed form for symmetric X-form states described by (Mz, Mzz, Mc):
// max(0, (4|Mc| - sqrt((1 + 4 Mzz)^2 - 4 Mz^2)) / 2).
double concurrence_closed_form(double Mz, double Mzz, double Mc);

}  // namespace spinbath
