#include "doctest.h"

#include "spinbath/equilibria.hpp"
#include "spinbath/measures.hpp"
#include "spinbath/spin_ops.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

using namespace spinbath;

namespace {
constexpr double kLn9 = 2.1972245773362196;
constexpr double kLn4 = 1.3862943611198906;

DensityMatrix werner(double p) {
    return DensityMatrix{2, p * singlet().data + (1.0 - p) * maximally_mixed(2).data};
}
}

TEST_SUITE("measures") {

    TEST_CASE("purity") {
        CHECK(std::abs(purity(all_up(2)) - 1.0) < 1e-14);
        CHECK(std::abs(purity(maximally_mixed(2)) - 0.25) < 1e-14);
        CHECK(std::abs(purity(gibbs_state(2, kLn9)) - 0.6724) < 1e-14);
    }

    TEST_CASE("closed-form purities") {
        CHECK(std::abs(purity_analytic_thermal(2, kLn9) - 0.6724) < 1e-14);
        CHECK(std::abs(purity_analytic_thermal(1, kLn9) - 0.82) < 1e-14);
        CHECK(std::abs(purity_analytic_principal(2, kLn9) - 6643.0 / 8281.0) < 1e-14);
        // Single spin: both descriptions are the same two-level system.
        CHECK(std::abs(purity_analytic_principal(1, kLn9) -
                       purity_analytic_thermal(1, kLn9)) < 1e-14);
    }

    TEST_CASE("von Neumann entropy") {
        CHECK(std::abs(von_neumann_entropy(all_up(2))) < 1e-12);
        CHECK(std::abs(von_neumann_entropy(maximally_mixed(3)) - 3.0 * std::log(2.0)) < 1e-12);
        CHECK(std::abs(von_neumann_entropy(gibbs_state(1, kLn9)) - 0.3250829733914482) <
              1e-14);
        Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
        bad(0, 0) = 1.2;
        bad(1, 1) = -0.2;
        CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix{1, bad}), std::invalid_argument);
    }

    TEST_CASE("entropy of a population vector") {
        Eigen::VectorXd p(3);
        p << 81.0 / 91.0, 9.0 / 91.0, 1.0 / 91.0;
        CHECK(std::abs(entropy_of_populations(p) - 0.38200892712681145) < 1e-14);
        Eigen::VectorXd degen = Eigen::VectorXd::Constant(4, 0.25);
        CHECK(std::abs(entropy_of_populations(degen) - std::log(4.0)) < 1e-14);
    }

    TEST_CASE("thermal entropy is extensive") {
        const double per_spin = entropy_analytic_thermal(1, kLn4);
        CHECK(std::abs(per_spin - 0.5004024235381879) < 1e-14);
        for (int n = 2; n <= 6; ++n)
            CHECK(std::abs(entropy_analytic_thermal(n, kLn4) - n * per_spin) < 1e-12);
        CHECK(std::abs(entropy_analytic_thermal(1, kLn9) -
                       von_neumann_entropy(gibbs_state(1, kLn9))) < 1e-14);
    }

    TEST_CASE("ladder entropy saturates") {
        CHECK(std::abs(entropy_analytic_principal(kLn9, 2) - 0.38200892712681145) < 1e-13);
        CHECK(std::abs(entropy_analytic_principal(kLn9, 3) - 0.3909439093329265) < 1e-13);
        CHECK(std::abs(entropy_analytic_principal(kLn9, 1) - 0.3250829733914482) < 1e-13);
        CHECK(std::abs(entropy_analytic_principal(kLn4) - 0.7497801928250778) < 1e-13);
        CHECK(std::abs(entropy_analytic_principal(kLn4, 50) - 0.7497801928250709) < 1e-13);
        // Saturation: growing the ladder no longer grows the entropy.
        CHECK(entropy_analytic_principal(kLn4, 80) < entropy_analytic_principal(kLn4) + 1e-12);
    }

    TEST_CASE("mixture entropy") {
        const double s1 = 0.38200892712681145;
        const auto mix = entropy_mixture({0.5, 0.5}, {s1, 0.0});
        CHECK(std::abs(mix.mixing - std::log(2.0)) < 1e-14);
        CHECK(std::abs(mix.value - 0.884151644123351) < 1e-14);
        const auto pure_weight = entropy_mixture({1.0, 0.0}, {0.7, 123.0});
        CHECK(std::abs(pure_weight.value - 0.7) < 1e-14);
        CHECK(std::abs(pure_weight.mixing) < 1e-14);
        CHECK_THROWS_AS(entropy_mixture({0.5, 0.4}, {0.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(entropy_mixture({0.5}, {0.0, 0.0}), std::invalid_argument);
    }

    TEST_CASE("concurrence of reference states") {
        CHECK(std::abs(concurrence(singlet()) - 1.0) < 1e-12);
        CHECK(std::abs(concurrence(all_up(2))) < 1e-12);
        CHECK(std::abs(concurrence(gibbs_state(2, kLn9))) < 1e-12);
        Eigen::VectorXcd bell(4);
        bell << 1.0, 0.0, 0.0, 1.0;
        CHECK(std::abs(concurrence(pure_state(2, bell)) - 1.0) < 1e-12);
        CHECK_THROWS_AS(concurrence(maximally_mixed(1)), std::invalid_argument);
    }

    TEST_CASE("Werner family concurrence") {
        CHECK(std::abs(concurrence(werner(0.8)) - 0.7) < 1e-12);
        CHECK(std::abs(concurrence(werner(1.0 / 3.0))) < 1e-12);
        // Same family through the closed form: Mz = 0, Mzz = -p/4, Mc = -p/2.
        CHECK(std::abs(concurrence_closed_form(0.0, -0.2, -0.4) - 0.7) < 1e-14);
        CHECK(concurrence_closed_form(0.0, -1.0 / 12.0, -1.0 / 6.0) == 0.0);
        CHECK(std::abs(concurrence_closed_form(0.0, -0.25, -0.5) - 1.0) < 1e-14);
    }

    TEST_CASE("closed form rejects impossible moment sets") {
        CHECK_THROWS_AS(concurrence_closed_form(1.0, -0.2, 0.1), std::domain_error);
    }
}
