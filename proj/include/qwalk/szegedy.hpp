#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "qwalk/coeffs.hpp"

namespace qwalk {

// ---- Generic finite Markov chains on the doubled space C^N (x) C^N ----

/// |phi_j> = sum_k sqrt(P_jk) |j,k>, one column per vertex; pairwise
/// orthonormal. Rejects negative entries and rows that do not sum to 1.
Eigen::MatrixXd stationary_coin_states(const Eigen::MatrixXd& P);

struct WalkOperator {
    Eigen::MatrixXd R; // coin flip, 2 Pi - I
    Eigen::MatrixXd S; // register swap
    Eigen::MatrixXd U; // S * R
    Eigen::MatrixXd T; // isometry, columns |phi_j>
    long num_vertices = 0;
};

WalkOperator walk_operator(const Eigen::MatrixXd& P);

/// Position distribution after one step from |phi_j>; equals row j of P.
Eigen::VectorXd one_step_distribution(const WalkOperator& op, long j);

/// D_jk = sqrt(P_jk P_kj).
Eigen::MatrixXd discriminant(const Eigen::MatrixXd& P);

/// mu_pm = lambda +- i sqrt(1 - lambda^2) = e^{+-i arccos lambda}.
std::pair<Complex, Complex> lift_spectrum(double lambda);

struct LiftingReport {
    Eigen::VectorXd d_eigenvalues;
    std::vector<double> pair_residuals; // ||U|mu> - mu|mu>|| per D eigenvalue (max over mu+-)
    double max_vector_residual = 0.0;
    double max_phase_mismatch = 0.0;    // lifted eigenvalues vs U spectrum
    double max_residual_unit_gap = 0.0; // leftover U eigenvalues vs {+-1}
    long lifted_count = 0;
    long residual_count = 0;
    bool ok = false;
};

/// Checks that every eigenvalue of D = T^dagger S T lifts into the spectrum
/// of U with the eigenvector formula |mu> = T|lambda> - mu ST|lambda>, and
/// that the leftover spectrum of U is {+-1}.
LiftingReport verify_lifting_operators(const Eigen::MatrixXd& U, const Eigen::MatrixXd& S,
                                       const Eigen::MatrixXd& T, double tol = 1e-8);
LiftingReport verify_lifting(const Eigen::MatrixXd& P, double tol = 1e-8);
LiftingReport verify_lifting_halfline(const WalkSpec& walk, long K, double tol = 1e-8);

// ---- Half-line specialization ----

/// Coin basis |0,0>, |0,1>, then |k,k-1>, |k,k>, |k,k+1> for 1 <= k <= K,
/// in lexicographic order; dimension 3K+2. The boundary coin target
/// |K,K+1> has no swap partner inside the space and is fixed by S, so
/// observables should be restricted to vertices <= K-1.
struct HalflineSpace {
    long cutoff = 0;
    long dim() const { return 3 * cutoff + 2; }
    long index(long j, long k) const; // -1 when the pair is not in the space
    std::pair<long, long> state(long idx) const;
};

struct HalflineOperator {
    HalflineSpace space;
    Eigen::MatrixXd R;
    Eigen::MatrixXd S;
    Eigen::MatrixXd U;
    bool boundary_degenerate = false; // p_0 = 0 (r_0 = 1) boundary block
};

/// 2x2 boundary coin block; degenerate when p0 = 0.
Eigen::Matrix2d halfline_r0_block(double p0, double r0);
/// 3x3 interior coin block from (q, r, p).
Eigen::Matrix3d halfline_rk_block(double q, double r, double p);

/// Block-diagonal R = R_0 + R_1 + ... + R_K and S = 1 + A + 1 + A + ...
HalflineOperator halfline_blocks(const WalkSpec& walk, long K);

Eigen::VectorXd halfline_phi(const HalflineSpace& space, const WalkSpec& walk, long j);
Eigen::VectorXd halfline_psi(const HalflineSpace& space, const WalkSpec& walk, long j);

/// T^dagger S T over vertices 0..K; entry (K,K) is polluted by the cutoff,
/// the leading K x K block is exact.
Eigen::MatrixXd halfline_discriminant(const HalflineOperator& op, const WalkSpec& walk);

/// Position distribution (vertices 0..K) after one step from |phi_j>.
Eigen::VectorXd one_step_distribution(const HalflineOperator& op, const WalkSpec& walk, long j);

struct CmvExtraction {
    std::vector<Eigen::VectorXd> e; // CMV basis vectors in the coin space
    std::vector<double> alphas;     // extracted Verblunsky coefficients
};

/// Builds e_0 = |phi_0> and alternates S(e_2k) = a_2k e_2k + rho_2k e_2k+1,
/// R(e_2k+1) = a_2k+1 e_2k+1 + rho_2k+1 e_2k+2, with rho_j > 0 fixing each
/// orientation. Needs n_alphas <= 2(K-2) so the cutoff stays invisible.
CmvExtraction cmv_basis_extraction(const WalkSpec& walk, long K, long n_alphas);

/// sigma_k, k = 0..K-1, spanning the orthogonal complement of
/// span{phi_j, psi_j}; requires r_k > 0 for all k <= K.
std::vector<Eigen::VectorXd> complement_basis(const WalkSpec& walk, long K, bool normalized = true);

} // namespace qwalk
