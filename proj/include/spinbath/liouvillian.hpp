// liouvillian.hpp - dissipative generator assembly, spectra, steady states
#pragma once

#include "spinbath/bath.hpp"
#include "spinbath/dicke.hpp"
#include "spinbath/spin_ops.hpp"

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace spinbath {

// Generator in column-stacked form, d vec(rho)/dt = data * vec(rho).
// All jump operators are real in the product basis, so data is real.
struct Superoperator {
    int n_spins{1};
    Eigen::Index dim{0};  // Hilbert space dimension 2^N; data is dim^2 x dim^2
    Eigen::MatrixXd data;
    RateSet rates;
};

struct SpectralReport {
    std::vector<std::complex<double>> eigenvalues;
    int zero_count{0};
    double adr{0.0};       // asymptotic decay rate: min |Re| over decaying modes
    double zero_tol{0.0};  // threshold actually used for the zero cluster
    // min |lambda| outside the zero cluster over max |lambda| inside it;
    // large values mean the cluster split is unambiguous.
    double cluster_gap_ratio{0.0};
};

enum class SteadyMethod { nullspace, long_time_evolution, analytic };

struct SteadyState {
    DensityMatrix rho;
    double residual{0.0};  // ||L vec(rho)||_2
    SteadyMethod method{SteadyMethod::nullspace};
};

// Dissipator with per-pair weights alpha_ij = 1 (i == j) or rates.alpha (i != j):
// sum_ij alpha_ij [ B (2 s+_i rho s-_j - {s-_j s+_i, rho})
//                 + A (2 s-_i rho s+_j - {s+_j s-_i, rho}) ].
// The B channel pumps toward all-up. 1 <= n_spins <= 6 (dense dim^2 storage).
Superoperator build_liouvillian(int n_spins, const RateSet& rates);

// Full eigenvalue set. zero_tol <= 0 selects 1e-9 * ||L||_F. Throws if the
// zero cluster and the decaying modes are not separated by at least 10x.
SpectralReport spectrum(const Superoperator& L, double zero_tol = -1.0);

// (alpha, adr) pairs; rates supplies A and B, alpha is overridden per point.
std::vector<std::pair<double, double>> adr_sweep(int n_spins,
                                                 const std::vector<double>& alphas,
                                                 const RateSet& rates);

// Unique kernel: SVD null vector. Degenerate kernel: long-time evolution from
// rho0 (required then), cross-checked against the spectral zero-mode projection
// to 1e-6. Result is Hermitized, trace-normalized, PSD-validated.
SteadyState steady_state(const Superoperator& L,
                         const std::optional<DensityMatrix>& rho0 = std::nullopt);

// || [O_hat, L] ||_F with O_hat the commutator superoperator of op,
// vec([O, rho]) = (I kron O - O^T kron I) vec(rho).
double symmetry_commutator_norm(const Superoperator& L, const OperatorMatrix& op);

// Adjoint generator applied to each pair correlator sigma_i . sigma_j;
// reports max |entry| of the image (zero iff the pair quantity is conserved).
// Keys are 1-based (i, j) with i < j.
std::map<std::pair<int, int>, double> conserved_quantity_rates(const Superoperator& L);

// L conjugated into the collective basis, W^T L W with W = U kron U.
Eigen::MatrixXd to_dicke_frame(const DickeBasis& basis, const Superoperator& L);

// Max |entry| of the collective-frame generator connecting different
// (J, copy) x (J', copy') sectors; zero at alpha = 1.
double inter_block_coupling_norm(const DickeBasis& basis, const Superoperator& L);

// Action of the adjoint generator on an observable, L^T acting on vec(O).
Eigen::MatrixXcd adjoint_action(const Superoperator& L, const Eigen::MatrixXcd& op);

// L.data applied to a complex vector, real and imaginary parts separately.
Eigen::VectorXcd apply_superoperator(const Superoperator& L, const Eigen::VectorXcd& v);

struct RegimeReport {
    int zero_count{0};
    double adr{0.0};
    double adr_threshold{0.0};  // absolute threshold actually applied
    int conserved_pair_count{0};
    std::string classification;       // integrable | nearly-integrable | non-integrable
    std::string steady_state_family;  // what the long-time state looks like
};

// zero_count > 1 -> integrable; otherwise adr < adr_threshold * R1 ->
// nearly-integrable; else non-integrable. conserved pairs counted at
// adjoint-image rates below 1e-10.
RegimeReport classify_regime(const Superoperator& L, double zero_tol = -1.0,
                             double adr_threshold = 0.01);

}  // namespace spinbath
