// liouvillian.cpp
#include "spinbath/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinbath {

namespace {

// Real product-basis embedding of sigma_plus at 1-based site i.
Eigen::MatrixXd site_raising_real(int n_spins, int i) {
    Eigen::Matrix2d sp = Eigen::Matrix2d::Zero();
    sp(0, 1) = 1.0;
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
    for (int k = 1; k <= n_spins; ++k) {
        const Eigen::MatrixXd factor =
            (k == i) ? Eigen::MatrixXd(sp) : Eigen::MatrixXd(Eigen::Matrix2d::Identity());
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
}

// vec(X rho Y) = (Y^T kron X) vec(rho) for real X, Y.
Eigen::MatrixXd sandwich(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    return Eigen::kroneckerProduct(y.transpose(), x);
}

double zero_threshold(const Superoperator& L, double zero_tol) {
    return zero_tol > 0.0 ? zero_tol : 1e-9 * L.data.norm();
}

DensityMatrix state_from_vector(int n_spins, const Eigen::VectorXcd& v, const char* fn) {
    const Eigen::Index dim = register_dim(n_spins);
    Eigen::MatrixXcd m = unvectorize(v, dim);
    m = 0.5 * (m + m.adjoint()).eval();
    const double tr = m.trace().real();
    if (std::abs(tr) < 1e-12)
        throw std::runtime_error(std::string(fn) + ": candidate steady state is traceless");
    DensityMatrix rho{n_spins, m / tr};
    rho.validate(1e-8);
    return rho;
}

}  // namespace

Superoperator build_liouvillian(int n_spins, const RateSet& rates) {
    if (n_spins < 1 || n_spins > 6)
        throw std::invalid_argument("build_liouvillian: n_spins must lie in [1, 6]");
    if (!(rates.A >= 0.0) || !(rates.B >= 0.0) || !(rates.A + rates.B > 0.0))
        throw std::invalid_argument("build_liouvillian: rates must be non-negative, A + B > 0");
    if (rates.alpha < 0.0 || rates.alpha > 1.0)
        throw std::invalid_argument("build_liouvillian: alpha must lie in [0, 1]");

    const Eigen::Index dim = register_dim(n_spins);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);

    std::vector<Eigen::MatrixXd> sp(static_cast<std::size_t>(n_spins));
    for (int i = 1; i <= n_spins; ++i)
        sp[static_cast<std::size_t>(i - 1)] = site_raising_real(n_spins, i);

    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(dim * dim, dim * dim);
    for (int i = 0; i < n_spins; ++i) {
        const auto& spi = sp[static_cast<std::size_t>(i)];
        const Eigen::MatrixXd smi = spi.transpose();
        for (int j = 0; j < n_spins; ++j) {
            const double w = (i == j) ? 1.0 : rates.alpha;
            if (w == 0.0) continue;
            const auto& spj = sp[static_cast<std::size_t>(j)];
            const Eigen::MatrixXd smj = spj.transpose();

            const Eigen::MatrixXd down = smj * spi;  // s-_j s+_i
            L += (w * rates.B) *
                 (2.0 * sandwich(spi, smj) - sandwich(down, id) - sandwich(id, down));
            const Eigen::MatrixXd up = spj * smi;  // s+_j s-_i
            L += (w * rates.A) *
                 (2.0 * sandwich(smi, spj) - sandwich(up, id) - sandwich(id, up));
        }
    }
    return {n_spins, dim, std::move(L), rates};
}

SpectralReport spectrum(const Superoperator& L, double zero_tol) {
    const double tol = zero_threshold(L, zero_tol);
    Eigen::EigenSolver<Eigen::MatrixXd> es(L.data, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectrum: eigenvalue computation failed");

    SpectralReport rep;
    rep.zero_tol = tol;
    rep.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());

    double inside_max = 0.0;
    double outside_min = std::numeric_limits<double>::infinity();
    double adr = std::numeric_limits<double>::infinity();
    for (const auto& ev : rep.eigenvalues) {
        const double mag = std::abs(ev);
        if (mag < tol) {
            ++rep.zero_count;
            inside_max = std::max(inside_max, mag);
        } else {
            outside_min = std::min(outside_min, mag);
            if (ev.real() < -tol) adr = std::min(adr, -ev.real());
        }
    }
    if (rep.zero_count == 0)
        throw std::runtime_error("spectrum: no zero mode found; zero_tol is too tight");
    rep.adr = std::isfinite(adr) ? adr : 0.0;
    rep.cluster_gap_ratio = inside_max > 0.0
                                ? outside_min / inside_max
                                : std::numeric_limits<double>::infinity();
    if (rep.cluster_gap_ratio < 10.0)
        throw std::runtime_error(
            "spectrum: zero cluster is not separated from decaying modes; adjust zero_tol");
    return rep;
}

std::vector<std::pair<double, double>> adr_sweep(int n_spins,
                                                 const std::vector<double>& alphas,
                                                 const RateSet& rates) {
    std::vector<std::pair<double, double>> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        RateSet r = rates;
        r.alpha = a;
        out.emplace_back(a, spectrum(build_liouvillian(n_spins, r)).adr);
    }
    return out;
}

SteadyState steady_state(const Superoperator& L, const std::optional<DensityMatrix>& rho0) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(L.data, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double sv_tol = 1e-9 * sv(0);
    Eigen::Index nullity = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) < sv_tol) ++nullity;
    if (nullity == 0)
        throw std::runtime_error("steady_state: no kernel found");

    if (nullity == 1) {
        const Eigen::VectorXcd v =
            svd.matrixV().col(sv.size() - 1).cast<std::complex<double>>();
        DensityMatrix rho = state_from_vector(L.n_spins, v, "steady_state");
        const double residual = apply_superoperator(L, vectorize(rho.data)).norm();
        return {std::move(rho), residual, SteadyMethod::nullspace};
    }

    if (!rho0.has_value())
        throw std::invalid_argument(
            "steady_state: degenerate kernel requires an initial state");
    rho0->validate(1e-8);

    Eigen::EigenSolver<Eigen::MatrixXd> es(L.data, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("steady_state: eigenvalue computation failed");
    const Eigen::MatrixXcd V = es.eigenvectors();
    const Eigen::VectorXcd lam = es.eigenvalues();
    const Eigen::VectorXcd v0 = vectorize(rho0->data);

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(V);
    const Eigen::VectorXcd c = lu.solve(v0);
    if ((V * c - v0).norm() > 1e-8 * v0.norm())
        throw std::runtime_error("steady_state: eigenbasis is ill-conditioned");

    const double tol = zero_threshold(L, -1.0);
    double adr = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < lam.size(); ++k)
        if (lam(k).real() < -tol) adr = std::min(adr, -lam(k).real());
    if (!std::isfinite(adr))
        throw std::runtime_error("steady_state: no decaying modes");
    const double t_long = 60.0 / adr;

    Eigen::VectorXcd propagated = Eigen::VectorXcd::Zero(v0.size());
    Eigen::VectorXcd projected = Eigen::VectorXcd::Zero(v0.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        if (std::abs(lam(k)) < tol) {
            projected += c(k) * V.col(k);
            propagated += c(k) * V.col(k);
        } else {
            propagated += c(k) * std::exp(lam(k) * t_long) * V.col(k);
        }
    }
    DensityMatrix rho = state_from_vector(L.n_spins, propagated, "steady_state");
    const DensityMatrix rho_proj = state_from_vector(L.n_spins, projected, "steady_state");
    if ((rho.data - rho_proj.data).norm() > 1e-6)
        throw std::runtime_error(
            "steady_state: long-time evolution and zero-mode projection disagree");
    const double residual = apply_superoperator(L, vectorize(rho.data)).norm();
    return {std::move(rho), residual, SteadyMethod::long_time_evolution};
}

double symmetry_commutator_norm(const Superoperator& L, const OperatorMatrix& op) {
    if (op.n_spins != L.n_spins)
        throw std::invalid_argument("symmetry_commutator_norm: operator size mismatch");
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(L.dim, L.dim);
    const Eigen::MatrixXcd ohat = Eigen::kroneckerProduct(id, op.data).eval() -
                                  Eigen::kroneckerProduct(op.data.transpose(), id).eval();
    const Eigen::MatrixXcd lc = L.data.cast<std::complex<double>>();
    return (ohat * lc - lc * ohat).norm();
}

std::map<std::pair<int, int>, double> conserved_quantity_rates(const Superoperator& L) {
    std::map<std::pair<int, int>, double> out;
    for (int i = 1; i <= L.n_spins; ++i) {
        for (int j = i + 1; j <= L.n_spins; ++j) {
            const Eigen::MatrixXcd img =
                adjoint_action(L, pair_correlator(L.n_spins, i, j).data);
            out[{i, j}] = img.cwiseAbs().maxCoeff();
        }
    }
    return out;
}

Eigen::MatrixXcd adjoint_action(const Superoperator& L, const Eigen::MatrixXcd& op) {
    if (op.rows() != L.dim || op.cols() != L.dim)
        throw std::invalid_argument("adjoint_action: operator size mismatch");
    const Eigen::VectorXcd v = vectorize(op);
    const Eigen::VectorXd re = L.data.transpose() * v.real();
    const Eigen::VectorXd im = L.data.transpose() * v.imag();
    Eigen::VectorXcd out(v.size());
    out.real() = re;
    out.imag() = im;
    return unvectorize(out, L.dim);
}

Eigen::VectorXcd apply_superoperator(const Superoperator& L, const Eigen::VectorXcd& v) {
    if (v.size() != L.data.cols())
        throw std::invalid_argument("apply_superoperator: vector size mismatch");
    Eigen::VectorXcd out(v.size());
    out.real() = L.data * v.real();
    out.imag() = L.data * v.imag();
    return out;
}

RegimeReport classify_regime(const Superoperator& L, double zero_tol, double adr_threshold) {
    if (!(adr_threshold > 0.0))
        throw std::invalid_argument("classify_regime: adr_threshold must be positive");
    const SpectralReport sr = spectrum(L, zero_tol);
    RegimeReport rep;
    rep.zero_count = sr.zero_count;
    rep.adr = sr.adr;
    rep.adr_threshold = adr_threshold * L.rates.R1;
    for (const auto& [pair, rate] : conserved_quantity_rates(L))
        if (rate < 1e-10) ++rep.conserved_pair_count;
    if (rep.zero_count > 1) {
        rep.classification = "integrable";
        rep.steady_state_family = "initial-condition-dependent block-thermal state";
    } else if (rep.adr < rep.adr_threshold) {
        rep.classification = "nearly-integrable";
        rep.steady_state_family = "prethermal plateau, then product Gibbs state";
    } else {
        rep.classification = "non-integrable";
        rep.steady_state_family = "product Gibbs state";
    }
    return rep;
}

Eigen::MatrixXd to_dicke_frame(const DickeBasis& basis, const Superoperator& L) {
    if (basis.n_spins != L.n_spins)
        throw std::invalid_argument("to_dicke_frame: basis size mismatch");
    const Eigen::MatrixXd W = Eigen::kroneckerProduct(basis.U, basis.U).eval();
    return W.transpose() * L.data * W;
}

double inter_block_coupling_norm(const DickeBasis& basis, const Superoperator& L) {
    const Eigen::MatrixXd Ld = to_dicke_frame(basis, L);
    const Eigen::Index dim = L.dim;
    std::vector<int> block_of(static_cast<std::size_t>(dim));
    for (std::size_t b = 0; b < basis.blocks.size(); ++b) {
        const auto& blk = basis.blocks[b];
        for (Eigen::Index k = 0; k < blk.size; ++k)
            block_of[static_cast<std::size_t>(blk.start + k)] = static_cast<int>(b);
    }
    double mx = 0.0;
    for (Eigen::Index col = 0; col < Ld.cols(); ++col) {
        const int ci = block_of[static_cast<std::size_t>(col % dim)];
        const int cj = block_of[static_cast<std::size_t>(col / dim)];
        for (Eigen::Index row = 0; row < Ld.rows(); ++row) {
            const int ri = block_of[static_cast<std::size_t>(row % dim)];
            const int rj = block_of[static_cast<std::size_t>(row / dim)];
            if (ri != ci || rj != cj) mx = std::max(mx, std::abs(Ld(row, col)));
        }
    }
    return mx;
}

}  // namespace spinbath
