// spin_ops.cpp
#include "spinbath/spin_ops.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace spinbath {

namespace {

using Cplx = std::complex<double>;

Eigen::Matrix2cd pauli(SpinComponent c) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (c) {
        case SpinComponent::x: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case SpinComponent::y: m(0, 1) = Cplx(0.0, -1.0); m(1, 0) = Cplx(0.0, 1.0); break;
        case SpinComponent::z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        case SpinComponent::plus: m(0, 1) = 1.0; break;
        case SpinComponent::minus: m(1, 0) = 1.0; break;
    }
    return m;
}

const char* component_name(SpinComponent c) {
    switch (c) {
        case SpinComponent::x: return "x";
        case SpinComponent::y: return "y";
        case SpinComponent::z: return "z";
        case SpinComponent::plus: return "plus";
        case SpinComponent::minus: return "minus";
    }
    return "?";
}

void check_register(int n_spins, const char* fn) {
    if (n_spins < 1 || n_spins > 12)
        throw std::invalid_argument(std::string(fn) + ": n_spins must lie in [1, 12]");
}

}  // namespace

Eigen::Index register_dim(int n_spins) {
    check_register(n_spins, "register_dim");
    return Eigen::Index{1} << n_spins;
}

void DensityMatrix::validate(double tol) const {
    const Eigen::Index dim = register_dim(n_spins);
    if (data.rows() != dim || data.cols() != dim)
        throw std::invalid_argument("DensityMatrix::validate: dimension does not match n_spins");
    if ((data - data.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("DensityMatrix::validate: not Hermitian");
    if (std::abs(data.trace() - Cplx(1.0)) > tol)
        throw std::invalid_argument("DensityMatrix::validate: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(data, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("DensityMatrix::validate: eigenvalue computation failed");
    if (es.eigenvalues().minCoeff() < -tol)
        throw std::invalid_argument("DensityMatrix::validate: not positive semidefinite");
}

OperatorMatrix site_operator(int n_spins, int i, SpinComponent c) {
    check_register(n_spins, "site_operator");
    if (i < 1 || i > n_spins)
        throw std::invalid_argument("site_operator: site index must lie in [1, n_spins]");
    const Eigen::Matrix2cd p = pauli(c);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 1; k <= n_spins; ++k) {
        const Eigen::MatrixXcd factor =
            (k == i) ? Eigen::MatrixXcd(p) : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity());
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return {n_spins, std::move(out),
            std::string("sigma_") + component_name(c) + "^" + std::to_string(i)};
}

OperatorMatrix collective_operator(int n_spins, SpinComponent c) {
    check_register(n_spins, "collective_operator");
    const Eigen::Index dim = register_dim(n_spins);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    const double scale = (c == SpinComponent::plus || c == SpinComponent::minus) ? 1.0 : 0.5;
    for (int i = 1; i <= n_spins; ++i) out += scale * site_operator(n_spins, i, c).data;
    return {n_spins, std::move(out), std::string("J_") + component_name(c)};
}

OperatorMatrix pair_correlator(int n_spins, int i, int j) {
    check_register(n_spins, "pair_correlator");
    if (i == j) throw std::invalid_argument("pair_correlator: sites must differ");
    const Eigen::Index dim = register_dim(n_spins);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (SpinComponent c : {SpinComponent::x, SpinComponent::y, SpinComponent::z})
        out += site_operator(n_spins, i, c).data * site_operator(n_spins, j, c).data;
    return {n_spins, std::move(out),
            "sigma^" + std::to_string(i) + ".sigma^" + std::to_string(j)};
}

double expectation(const DensityMatrix& rho, const OperatorMatrix& op) {
    if (rho.n_spins != op.n_spins)
        throw std::invalid_argument("expectation: operator and state sizes differ");
    const Cplx val = (op.data * rho.data).trace();
    if (std::abs(val.imag()) > 1e-10)
        throw std::runtime_error("expectation: imaginary residue exceeds 1e-10 for " + op.label);
    return val.real();
}

ObservableSet extract_observables(const DensityMatrix& rho, bool include_antisymmetric) {
    const int n = rho.n_spins;
    ObservableSet out;

    auto spin_half = [&](int site, SpinComponent c) {
        OperatorMatrix op = site_operator(n, site, c);
        op.data *= 0.5;
        return op;
    };
    auto total = [&](SpinComponent c) {
        const Eigen::Index dim = register_dim(n);
        OperatorMatrix op{n, Eigen::MatrixXcd::Zero(dim, dim), "M"};
        for (int i = 1; i <= n; ++i) op.data += spin_half(i, c).data;
        return op;
    };

    out["Mz"] = expectation(rho, total(SpinComponent::z));

    if (n == 2) {
        out["Mx"] = expectation(rho, total(SpinComponent::x));
        out["My"] = expectation(rho, total(SpinComponent::y));
        auto pair_sym = [&](SpinComponent a, SpinComponent b) {
            OperatorMatrix op{2, spin_half(1, a).data * spin_half(2, b).data, "pair"};
            if (a != b) {
                op.data += spin_half(1, b).data * spin_half(2, a).data;
            }
            return op;
        };
        out["Mxx"] = expectation(rho, pair_sym(SpinComponent::x, SpinComponent::x));
        out["Myy"] = expectation(rho, pair_sym(SpinComponent::y, SpinComponent::y));
        out["Mzz"] = expectation(rho, pair_sym(SpinComponent::z, SpinComponent::z));
        out["Mxy"] = expectation(rho, pair_sym(SpinComponent::x, SpinComponent::y));
        out["Mxz"] = expectation(rho, pair_sym(SpinComponent::x, SpinComponent::z));
        out["Myz"] = expectation(rho, pair_sym(SpinComponent::y, SpinComponent::z));
        out["Mc"] = out["Mxx"] + out["Myy"];
        out["F"] = out["Mzz"] + out["Mc"];
        if (include_antisymmetric) {
            for (auto [c, name] : {std::pair{SpinComponent::x, "Ax"},
                                   std::pair{SpinComponent::y, "Ay"},
                                   std::pair{SpinComponent::z, "Az"}}) {
                OperatorMatrix op{2, spin_half(1, c).data - spin_half(2, c).data, name};
                out[name] = expectation(rho, op);
            }
            auto pair_anti = [&](SpinComponent a, SpinComponent b) {
                OperatorMatrix op{2,
                                  spin_half(1, a).data * spin_half(2, b).data -
                                      spin_half(1, b).data * spin_half(2, a).data,
                                  "pair_anti"};
                return op;
            };
            out["Axy"] = expectation(rho, pair_anti(SpinComponent::x, SpinComponent::y));
            out["Axz"] = expectation(rho, pair_anti(SpinComponent::x, SpinComponent::z));
            out["Ayz"] = expectation(rho, pair_anti(SpinComponent::y, SpinComponent::z));
        }
    } else if (n == 3) {
        double mc = 0.0, mzz = 0.0, mcz = 0.0;
        auto ip = [&](int site, SpinComponent c) { return spin_half(site, c).data; };
        for (int i = 1; i <= 3; ++i) {
            for (int j = i + 1; j <= 3; ++j) {
                OperatorMatrix cxy{3, ip(i, SpinComponent::x) * ip(j, SpinComponent::x) +
                                          ip(i, SpinComponent::y) * ip(j, SpinComponent::y),
                                   "c"};
                OperatorMatrix czz{3, ip(i, SpinComponent::z) * ip(j, SpinComponent::z), "zz"};
                mc += expectation(rho, cxy);
                mzz += expectation(rho, czz);
                const int k = 6 - i - j;  // remaining site
                OperatorMatrix ccz{3, cxy.data * ip(k, SpinComponent::z), "cz"};
                mcz += expectation(rho, ccz);
            }
        }
        OperatorMatrix zzz{3, ip(1, SpinComponent::z) * ip(2, SpinComponent::z) *
                                  ip(3, SpinComponent::z),
                           "zzz"};
        out["Mc"] = mc;
        out["Mzz"] = mzz;
        out["Mcz"] = mcz;
        out["Mzzz"] = expectation(rho, zzz);
    }
    return out;
}

DensityMatrix maximally_mixed(int n_spins) {
    const Eigen::Index dim = register_dim(n_spins);
    return {n_spins, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim)};
}

DensityMatrix pure_state(int n_spins, const Eigen::VectorXcd& psi) {
    const Eigen::Index dim = register_dim(n_spins);
    if (psi.size() != dim)
        throw std::invalid_argument("pure_state: vector length does not match n_spins");
    const double nrm = psi.norm();
    if (nrm < 1e-12) throw std::invalid_argument("pure_state: zero vector");
    const Eigen::VectorXcd u = psi / nrm;
    return {n_spins, u * u.adjoint()};
}

DensityMatrix all_up(int n_spins) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(register_dim(n_spins));
    psi(0) = 1.0;
    return pure_state(n_spins, psi);
}

DensityMatrix all_down(int n_spins) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(register_dim(n_spins));
    psi(psi.size() - 1) = 1.0;
    return pure_state(n_spins, psi);
}

DensityMatrix singlet() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(1) = 1.0 / std::sqrt(2.0);   // |up down>
    psi(2) = -1.0 / std::sqrt(2.0);  // |down up>
    return pure_state(2, psi);
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
    return Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()));
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim) {
    if (v.size() != dim * dim)
        throw std::invalid_argument("unvectorize: length is not dim^2");
    return Eigen::MatrixXcd(Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim));
}

}  // namespace spinbath
