// dicke.cpp
#include "spinbath/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <tuple>

namespace spinbath {

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long out = 1;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// One J sector during coupling. vecs columns are ordered m = +J .. -J.
// (parent_two_j, parent_copy) records where the sector came from, for copy ordering.
struct Sector {
    int two_j;
    int parent_two_j;
    int parent_copy;
    Eigen::MatrixXd vecs;
};

// Append one spin (as the rightmost tensor factor) to a J sector, producing the
// J + 1/2 and J - 1/2 children with Condon-Shortley phases.
std::vector<Sector> couple_one_spin(const Sector& s, int parent_copy) {
    const int tj = s.two_j;
    const Eigen::Index d = s.vecs.rows();
    std::vector<Sector> out;

    auto parent_col = [&](int two_m) -> Eigen::VectorXd {
        const int col = (tj - two_m) / 2;  // m = +J at column 0
        return s.vecs.col(col);
    };
    auto embed = [&](const Eigen::VectorXd& v, bool up) {
        // kron(parent, e_up) interleaves: amplitude of |parent_k>|up> sits at 2k,
        // |parent_k>|down> at 2k + 1.
        Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * d);
        for (Eigen::Index k = 0; k < d; ++k) w(2 * k + (up ? 0 : 1)) = v(k);
        return w;
    };

    {  // child J + 1/2
        const int tjc = tj + 1;
        Eigen::MatrixXd vecs(2 * d, tjc + 1);
        for (int two_m = tjc; two_m >= -tjc; two_m -= 2) {
            const double cu = std::sqrt((tj + two_m + 1.0) / (2.0 * (tj + 1.0)));
            const double cd = std::sqrt((tj - two_m + 1.0) / (2.0 * (tj + 1.0)));
            Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * d);
            if (two_m - 1 >= -tj) w += cu * embed(parent_col(two_m - 1), true);
            if (two_m + 1 <= tj) w += cd * embed(parent_col(two_m + 1), false);
            vecs.col((tjc - two_m) / 2) = w;
        }
        out.push_back({tjc, tj, parent_copy, std::move(vecs)});
    }
    if (tj > 0) {  // child J - 1/2
        const int tjc = tj - 1;
        Eigen::MatrixXd vecs(2 * d, tjc + 1);
        for (int two_m = tjc; two_m >= -tjc; two_m -= 2) {
            const double cu = std::sqrt((tj - two_m + 1.0) / (2.0 * (tj + 1.0)));
            const double cd = std::sqrt((tj + two_m + 1.0) / (2.0 * (tj + 1.0)));
            Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * d);
            if (two_m - 1 >= -tj) w -= cu * embed(parent_col(two_m - 1), true);
            if (two_m + 1 <= tj) w += cd * embed(parent_col(two_m + 1), false);
            vecs.col((tjc - two_m) / 2) = w;
        }
        out.push_back({tjc, tj, parent_copy, std::move(vecs)});
    }
    return out;
}

}  // namespace

long long degeneracy(int n_spins, int two_l) {
    if (n_spins < 1 || n_spins > 60)
        throw std::invalid_argument("degeneracy: n_spins must lie in [1, 60]");
    if (two_l < 0 || two_l > n_spins || (n_spins - two_l) % 2 != 0)
        throw std::invalid_argument("degeneracy: invalid (n_spins, two_l) pair");
    const int k = (n_spins - two_l) / 2;
    return binom(n_spins, k) - binom(n_spins, k - 1);
}

DickeBasis build_dicke_basis(int n_spins) {
    if (n_spins < 1 || n_spins > 12)
        throw std::invalid_argument("build_dicke_basis: n_spins must lie in [1, 12]");

    std::vector<Sector> sectors;
    {
        Eigen::MatrixXd v(2, 2);
        v << 1, 0, 0, 1;  // columns m = +1/2, -1/2
        sectors.push_back({1, 0, 0, std::move(v)});
    }
    for (int n = 2; n <= n_spins; ++n) {
        std::vector<Sector> next;
        for (std::size_t c = 0; c < sectors.size(); ++c) {
            auto children = couple_one_spin(sectors[c], static_cast<int>(c));
            for (auto& ch : children) next.push_back(std::move(ch));
        }
        // J descending; within J, parent J ascending, then parent copy.
        std::stable_sort(next.begin(), next.end(), [](const Sector& a, const Sector& b) {
            return std::tuple(-a.two_j, a.parent_two_j, a.parent_copy) <
                   std::tuple(-b.two_j, b.parent_two_j, b.parent_copy);
        });
        sectors = std::move(next);
    }

    const Eigen::Index dim = register_dim(n_spins);
    DickeBasis basis;
    basis.n_spins = n_spins;
    basis.U.resize(dim, dim);
    Eigen::Index col = 0;
    int prev_two_j = -1;
    int copy = 0;
    for (const auto& s : sectors) {
        copy = (s.two_j == prev_two_j) ? copy + 1 : 1;
        prev_two_j = s.two_j;
        basis.blocks.push_back({s.two_j, copy, col, s.vecs.cols()});
        for (int two_m = s.two_j; two_m >= -s.two_j; two_m -= 2) {
            basis.U.col(col) = s.vecs.col((s.two_j - two_m) / 2);
            basis.labels.push_back({s.two_j, copy, two_m});
            ++col;
        }
    }
    if (col != dim) throw std::logic_error("build_dicke_basis: sector dimensions do not sum to 2^N");
    for (const auto& b : basis.blocks) {
        if (degeneracy(n_spins, b.two_j) < b.copy)
            throw std::logic_error("build_dicke_basis: copy count exceeds degeneracy");
    }
    return basis;
}

const DickeBlock& DickeBasis::block(int two_j, int copy) const {
    for (const auto& b : blocks)
        if (b.two_j == two_j && b.copy == copy) return b;
    throw std::invalid_argument("DickeBasis::block: no such (J, copy) sector");
}

Eigen::MatrixXcd to_dicke_frame(const DickeBasis& basis, const Eigen::MatrixXcd& rho) {
    if (rho.rows() != basis.U.rows() || rho.cols() != basis.U.cols())
        throw std::invalid_argument("to_dicke_frame: dimension mismatch");
    const Eigen::MatrixXcd uc = basis.U.cast<std::complex<double>>();
    return uc.transpose() * rho * uc;
}

DensityMatrix dicke_state(const DickeBasis& basis, int two_j, int copy, int two_m) {
    const DickeBlock& b = basis.block(two_j, copy);
    if (two_m > two_j || two_m < -two_j || (two_j - two_m) % 2 != 0)
        throw std::invalid_argument("dicke_state: invalid two_m for this sector");
    const Eigen::Index col = b.start + (two_j - two_m) / 2;
    return pure_state(basis.n_spins, basis.U.col(col).cast<std::complex<double>>());
}

std::vector<double> block_traces(const DickeBasis& basis, const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXcd rd = to_dicke_frame(basis, rho);
    std::vector<double> out;
    out.reserve(basis.blocks.size());
    for (const auto& b : basis.blocks)
        out.push_back(rd.block(b.start, b.start, b.size, b.size).trace().real());
    return out;
}

}  // namespace spinbath
