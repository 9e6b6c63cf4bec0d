#include "doctest.h"

#include "spinbath/dicke.hpp"
#include "spinbath/equilibria.hpp"
#include "spinbath/measures.hpp"
#include "spinbath/spin_ops.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

using namespace spinbath;

namespace {
constexpr double kLn9 = 2.1972245773362196;
}

TEST_SUITE("equilibria") {

    TEST_CASE("matrix exponential") {
        Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
        CHECK((matrix_exponential(z) - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-14);
        Eigen::MatrixXcd x(2, 2);
        x << 0.0, 0.7, 0.7, 0.0;
        const auto ex = matrix_exponential(x);
        CHECK(std::abs(ex(0, 0).real() - std::cosh(0.7)) < 1e-14);
        CHECK(std::abs(ex(0, 1).real() - std::sinh(0.7)) < 1e-14);
    }

    TEST_CASE("product Gibbs state") {
        const auto g1 = gibbs_state(1, kLn9);
        CHECK(std::abs(g1.data(0, 0).real() - 0.9) < 1e-14);
        CHECK(std::abs(g1.data(1, 1).real() - 0.1) < 1e-14);
        const auto g2 = gibbs_state(2, kLn9);
        CHECK(std::abs(g2.data(0, 0).real() - 0.81) < 1e-14);
        CHECK(std::abs(g2.data(3, 3).real() - 0.01) < 1e-14);
        CHECK_NOTHROW(g2.validate());
        const auto obs = extract_observables(g2);
        CHECK(std::abs(obs.at("Mz") - 0.8) < 1e-14);
        CHECK(std::abs(obs.at("Mzz") - 0.16) < 1e-14);
        CHECK(std::abs(obs.at("Mc")) < 1e-14);
    }

    TEST_CASE("two-spin ensemble observables at F = 0") {
        const auto obs = two_spin_gge_observables(0.0, 0.8);
        CHECK(std::abs(obs.Mz - 60.0 / 91.0) < 1e-15);
        CHECK(std::abs(obs.Mc + 8.0 / 91.0) < 1e-15);
        CHECK(std::abs(obs.Mzz - 8.0 / 91.0) < 1e-15);
    }

    TEST_CASE("multiplier solves the pair constraint") {
        CHECK(std::abs(gge_lagrange_multiplier(0.0, kLn9) - std::log(91.0 / 27.0)) < 1e-14);
        for (const double f : {-0.6, -0.2, 0.1, 0.24}) {
            const double l1 = gge_lagrange_multiplier(f, kLn9);
            const auto rho = gge_density_matrix(l1, kLn9);
            CHECK(std::abs(extract_observables(rho).at("F") - f) < 1e-12);
        }
        CHECK_THROWS_AS(gge_lagrange_multiplier(0.25, kLn9), std::domain_error);
        CHECK_THROWS_AS(gge_lagrange_multiplier(0.3, kLn9), std::domain_error);
        CHECK_THROWS_AS(gge_lagrange_multiplier(-0.75, kLn9), std::domain_error);
    }

    TEST_CASE("zero multiplier reduces the ensemble to product Gibbs") {
        const auto rho = gge_density_matrix(0.0, kLn9);
        CHECK((rho.data - gibbs_state(2, kLn9).data).norm() < 1e-13);
        CHECK_NOTHROW(rho.validate());
    }

    TEST_CASE("block-thermal state from the polarized pair") {
        const auto basis = build_dicke_basis(2);
        const auto bt = block_thermal_state(all_up(2), basis, kLn9);
        REQUIRE(bt.weights.size() == 2);
        CHECK(std::abs(bt.weights[0] - 1.0) < 1e-12);  // triplet keeps all weight
        CHECK(std::abs(bt.weights[1]) < 1e-12);        // singlet stays empty
        const auto frame = to_dicke_frame(basis, bt.rho.data);
        CHECK(std::abs(frame(0, 0).real() - 81.0 / 91.0) < 1e-12);
        CHECK(std::abs(frame(1, 1).real() - 9.0 / 91.0) < 1e-12);
        CHECK(std::abs(frame(2, 2).real() - 1.0 / 91.0) < 1e-12);
        CHECK(std::abs(frame(3, 3).real()) < 1e-12);
        const auto obs = extract_observables(bt.rho);
        CHECK(std::abs(obs.at("Mz") - 80.0 / 91.0) < 1e-12);
        CHECK(std::abs(obs.at("Mzz") - 73.0 / 364.0) < 1e-12);
        CHECK(std::abs(obs.at("Mc") - 9.0 / 182.0) < 1e-12);
    }

    TEST_CASE("dark states pass through unchanged") {
        const auto basis = build_dicke_basis(2);
        const auto bt = block_thermal_state(singlet(), basis, kLn9);
        CHECK((bt.rho.data - singlet().data).norm() < 1e-13);
    }

    TEST_CASE("block-thermal state of the mixed register matches the F = 0 ensemble") {
        const auto basis = build_dicke_basis(2);
        const auto bt = block_thermal_state(maximally_mixed(2), basis, kLn9);
        const auto obs = extract_observables(bt.rho);
        const auto gge = two_spin_gge_observables(0.0, std::tanh(0.5 * kLn9));
        CHECK(std::abs(obs.at("Mz") - gge.Mz) < 1e-13);
        CHECK(std::abs(obs.at("Mzz") - gge.Mzz) < 1e-13);
        CHECK(std::abs(obs.at("Mc") - gge.Mc) < 1e-13);
    }

    TEST_CASE("coherences between equal-J copies survive") {
        const auto basis = build_dicke_basis(3);
        // Equal superposition of the two low-sector copies at M = +1/2.
        const Eigen::Index c1 = basis.block(1, 1).start;
        const Eigen::Index c2 = basis.block(1, 2).start;
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
        psi += basis.U.col(c1).cast<std::complex<double>>() / std::sqrt(2.0);
        psi += basis.U.col(c2).cast<std::complex<double>>() / std::sqrt(2.0);
        const auto bt = block_thermal_state(pure_state(3, psi), basis, kLn9);
        const auto frame = to_dicke_frame(basis, bt.rho.data);
        // Cross-copy block carries half the ladder weight.
        CHECK(std::abs(frame(c1, c2).real() - 0.5 * 0.9) < 1e-12);
        CHECK(std::abs(frame(c1 + 1, c2 + 1).real() - 0.5 * 0.1) < 1e-12);
        // The superposition behaves as a single effective sector: ladder entropy only.
        CHECK(std::abs(von_neumann_entropy(bt.rho) - entropy_analytic_principal(kLn9, 1)) <
              1e-12);
        CHECK_NOTHROW(bt.rho.validate(1e-10));
    }
}
