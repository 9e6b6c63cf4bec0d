// measures.cpp
#include "spinbath/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace spinbath {

namespace {

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Ladder partition function Z(x) = sum_{k=0..N} e^{x (N/2 - k)}.
double ladder_log_z(int n, double x) {
    return std::log(std::sinh(0.5 * (n + 1) * x)) - std::log(std::sinh(0.5 * x));
}

void check_bw(double bw, const char* fn) {
    if (!(bw > 0.0))
        throw std::invalid_argument(std::string(fn) + ": beta*omega0 must be positive");
}

}  // namespace

double purity(const DensityMatrix& rho) {
    return (rho.data * rho.data).trace().real();
}

double purity_analytic_thermal(int n_spins, double beta_omega0) {
    check_bw(beta_omega0, "purity_analytic_thermal");
    const double m0 = std::tanh(0.5 * beta_omega0);
    return std::pow(0.5 * (1.0 + m0 * m0), n_spins);
}

double purity_analytic_principal(int n_spins, double beta_omega0) {
    check_bw(beta_omega0, "purity_analytic_principal");
    return std::exp(ladder_log_z(n_spins, 2.0 * beta_omega0) -
                    2.0 * ladder_log_z(n_spins, beta_omega0));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        0.5 * (rho.data + rho.data.adjoint()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("von_neumann_entropy: eigendecomposition failed");
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double lam = es.eigenvalues()(k);
        if (lam < -1e-10)
            throw std::invalid_argument("von_neumann_entropy: eigenvalue below -1e-10");
        s -= xlnx(std::max(lam, 0.0));
    }
    return s;
}

double entropy_of_populations(const Eigen::VectorXd& p) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (p(k) < -1e-10)
            throw std::invalid_argument("entropy_of_populations: negative probability");
        s -= xlnx(std::max(p(k), 0.0));
    }
    return s;
}

double entropy_analytic_thermal(int n_spins, double beta_omega0) {
    check_bw(beta_omega0, "entropy_analytic_thermal");
    const double h = 0.5 * beta_omega0;
    return n_spins * (std::log(2.0 * std::cosh(h)) - h * std::tanh(h));
}

double entropy_analytic_principal(double beta_omega0, std::optional<int> n_spins) {
    check_bw(beta_omega0, "entropy_analytic_principal");
    const double x = beta_omega0;
    if (!n_spins.has_value())
        return 0.5 * x / std::tanh(0.5 * x) - std::log(2.0 * std::sinh(0.5 * x));
    const int n = *n_spins;
    if (n < 1)
        throw std::invalid_argument("entropy_analytic_principal: n_spins must be positive");
    const double mean_m =
        0.5 * (n + 1) / std::tanh(0.5 * (n + 1) * x) - 0.5 / std::tanh(0.5 * x);
    return ladder_log_z(n, x) - x * mean_m;
}

MixtureEntropy entropy_mixture(const std::vector<double>& weights,
                               const std::vector<double>& entropies) {
    if (weights.size() != entropies.size())
        throw std::invalid_argument("entropy_mixture: weights and entropies sizes differ");
    double total = 0.0;
    MixtureEntropy out;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const double x = weights[k];
        if (x < -1e-12) throw std::invalid_argument("entropy_mixture: negative weight");
        if (x <= 0.0) continue;
        total += x;
        out.value += x * entropies[k];
        out.mixing -= xlnx(x);
    }
    if (std::abs(total - 1.0) > 1e-8)
        throw std::invalid_argument("entropy_mixture: weights must sum to 1");
    out.value += out.mixing;
    return out;
}

double concurrence(const DensityMatrix& rho) {
    if (rho.n_spins != 2)
        throw std::invalid_argument("concurrence: defined for two spins");
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();  // sigma_y kron sigma_y, real
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Eigen::Matrix4cd r = rho.data * yy * rho.data.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("concurrence: eigendecomposition failed");
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k)
        lam[static_cast<std::size_t>(k)] =
            std::sqrt(std::max(es.eigenvalues()(k).real(), 0.0));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double concurrence_closed_form(double Mz, double Mzz, double Mc) {
    const double arg = (1.0 + 4.0 * Mzz) * (1.0 + 4.0 * Mzz) - 4.0 * Mz * Mz;
    if (arg < -1e-12)
        throw std::domain_error("concurrence_closed_form: observables violate positivity");
    return std::max(0.0, 0.5 * (4.0 * std::abs(Mc) - std::sqrt(std::max(arg, 0.0))));
}

}  // namespace spinbath
