// equilibria.cpp
#include "spinbath/equilibria.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace spinbath {

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("matrix_exponential: matrix must be square");
    const double scale = std::max(1.0, h.norm());
    if ((h - h.adjoint()).norm() > 1e-10 * scale)
        throw std::invalid_argument("matrix_exponential: matrix must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("matrix_exponential: eigendecomposition failed");
    const Eigen::VectorXd expd = es.eigenvalues().array().exp();
    return es.eigenvectors() * expd.asDiagonal() * es.eigenvectors().adjoint();
}

DensityMatrix gibbs_state(int n_spins, double beta_omega0) {
    if (!(beta_omega0 > 0.0))
        throw std::invalid_argument("gibbs_state: beta*omega0 must be positive");
    const double z = 2.0 * std::cosh(0.5 * beta_omega0);
    Eigen::Matrix2cd single = Eigen::Matrix2cd::Zero();
    single(0, 0) = std::exp(0.5 * beta_omega0) / z;
    single(1, 1) = std::exp(-0.5 * beta_omega0) / z;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n_spins; ++k)
        out = Eigen::kroneckerProduct(out, single).eval();
    DensityMatrix rho{n_spins, std::move(out)};
    rho.validate();
    return rho;
}

SymmetricPairObservables two_spin_gge_observables(double F, double M0) {
    const double den = M0 * M0 + 3.0;
    SymmetricPairObservables obs;
    obs.Mz = M0 * (4.0 * F + 3.0) / den;
    obs.Mc = (4.0 * F - M0 * M0) / (2.0 * den);
    obs.Mzz = F - obs.Mc;
    return obs;
}

double gge_lagrange_multiplier(double F, double beta_omega0) {
    if (!(beta_omega0 > 0.0))
        throw std::invalid_argument("gge_lagrange_multiplier: beta*omega0 must be positive");
    if (F >= 0.25)
        throw std::domain_error(
            "gge_lagrange_multiplier: F = 1/4 boundary, multiplier diverges");
    if (F <= -0.75)
        throw std::domain_error("gge_lagrange_multiplier: F <= -3/4 is outside the ensemble");
    const double u =
        (1.0 - 4.0 * F) * (1.0 + 2.0 * std::cosh(beta_omega0)) / (3.0 + 4.0 * F);
    return std::log(u);
}

DensityMatrix gge_density_matrix(double l1, double beta_omega0) {
    const Eigen::MatrixXcd jz = collective_operator(2, SpinComponent::z).data;
    const Eigen::MatrixXcd pair = pair_correlator(2, 1, 2).data;
    const Eigen::MatrixXcd h = beta_omega0 * jz - 0.25 * l1 * pair;
    Eigen::MatrixXcd w = matrix_exponential(h);
    w /= w.trace();
    DensityMatrix rho{2, std::move(w)};
    rho.validate();
    return rho;
}

BlockThermalState block_thermal_state(const DensityMatrix& rho0, const DickeBasis& basis,
                                      double beta_omega0) {
    if (rho0.n_spins != basis.n_spins)
        throw std::invalid_argument("block_thermal_state: state and basis sizes differ");
    rho0.validate(1e-8);
    const Eigen::MatrixXcd rd = to_dicke_frame(basis, rho0.data);

    // Thermal ladder per J, columns ordered M = +J .. -J.
    auto ladder = [&](int two_j) {
        Eigen::VectorXd w(two_j + 1);
        for (int k = 0; k <= two_j; ++k)
            w(k) = std::exp(0.5 * beta_omega0 * (two_j - 2 * k));
        w /= w.sum();
        return w;
    };

    const Eigen::Index dim = rd.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    BlockThermalState result;
    for (const auto& b1 : basis.blocks) {
        const Eigen::VectorXd g = ladder(b1.two_j);
        for (const auto& b2 : basis.blocks) {
            if (b1.two_j != b2.two_j) continue;  // cross-J coherences decay to zero
            const std::complex<double> tau =
                rd.block(b1.start, b2.start, b1.size, b2.size).trace();
            for (Eigen::Index k = 0; k < b1.size; ++k)
                out(b1.start + k, b2.start + k) = tau * g(k);
            if (&b1 == &b2) result.weights.push_back(tau.real());
        }
    }
    const Eigen::MatrixXcd uc = basis.U.cast<std::complex<double>>();
    result.rho = DensityMatrix{basis.n_spins, uc * out * uc.transpose()};
    result.rho.validate(1e-8);
    return result;
}

}  // namespace spinbath
