// dicke.hpp - collective angular momentum basis with degeneracy bookkeeping
#pragma once

#include "spinbath/spin_ops.hpp"

#include <Eigen/Dense>
#include <vector>

namespace spinbath {

// Angular momenta are stored doubled (two_j = 2J, two_m = 2M) so half-integer
// labels stay exact. copy is the 1-based degeneracy index within a J sector.
struct DickeLabel {
    int two_j{0};
    int copy{1};
    int two_m{0};
};

// Contiguous column range of U spanned by one (J, copy) block.
struct DickeBlock {
    int two_j{0};
    int copy{1};
    Eigen::Index start{0};  // first column index
    Eigen::Index size{0};   // 2J + 1
};

// Basis ordering: J descending, copy ascending, M descending from +J to -J.
// Within a J sector, copies are ordered by the J of the (N-1)-spin parent
// ascending, then by the parent copy index. Column k of U is the collective
// state labels[k] expressed in the product basis; U is real orthogonal.
struct DickeBasis {
    int n_spins{1};
    Eigen::MatrixXd U;
    std::vector<DickeLabel> labels;
    std::vector<DickeBlock> blocks;

    const DickeBlock& block(int two_j, int copy) const;
};

// Number of J sectors with 2J = two_l in an N-spin register:
// binom(N, k) - binom(N, k - 1) with k = (N - two_l)/2. Throws if two_l < 0,
// two_l > N, or N - two_l is odd. N <= 60 keeps the binomials exact.
long long degeneracy(int n_spins, int two_l);

// Dense construction by iterative angular momentum coupling; n_spins <= 12.
DickeBasis build_dicke_basis(int n_spins);

// rho expressed in the collective basis: U^T rho U.
Eigen::MatrixXcd to_dicke_frame(const DickeBasis& basis, const Eigen::MatrixXcd& rho);

// Projector onto a single collective state as a product-basis density matrix.
DensityMatrix dicke_state(const DickeBasis& basis, int two_j, int copy, int two_m);

// Per-(J, copy) block traces of rho, in basis.blocks order.
std::vector<double> block_traces(const DickeBasis& basis, const Eigen::MatrixXcd& rho);

}  // namespace spinbath
