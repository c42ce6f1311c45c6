#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qwalk/coeffs.hpp"

namespace qwalk {

/// Theta block [[conj(a), rho], [rho, -a]] with rho = sqrt(1-|a|^2) >= 0.
Eigen::Matrix2cd theta_block(Complex alpha);

/// Pentadiagonal unitary truncation with its Theta-block LM factorization.
/// dense = L * M entrywise; entries vanish for |row-col| > 2.
struct CmvOperator {
    Eigen::MatrixXcd dense;
    Eigen::MatrixXcd L;
    Eigen::MatrixXcd M;
    std::vector<Complex> alphas; // coefficients the truncation used
    long size = 0;
};

/// Upper n x n block of the infinite CMV matrix of the spec, together with
/// the matching minors of L = Theta_0 + Theta_2 + ... and M = 1 + Theta_1 + ...
CmvOperator build_cmv(const VerblunskySpec& spec, long n);

/// Finite n x n CMV matrix: interior coefficients strictly inside the disk,
/// terminal coefficient on the unit circle. Exactly unitary.
CmvOperator finite_cmv(const std::vector<Complex>& alphas);

/// Monic Phi_n(z) as det(z I_n - C^(n)), by fraction-free elimination with
/// partial pivoting. Test oracle; n is capped at 12.
Complex monic_via_det(const VerblunskySpec& spec, long n, Complex z);

/// Bareiss fraction-free determinant with partial pivoting.
Complex det_fraction_free(Eigen::MatrixXcd m);

/// CMV (Laurent) basis value chi_n(z) for z on the unit circle:
/// chi_2k = z^-k phi*_2k, chi_{2k+1} = z^-k phi_{2k+1}.
Complex cmv_basis_eval(const VerblunskySpec& spec, long n, Complex z);

/// Eigenvalues of a finite CMV matrix (dense QR-type solver).
Eigen::VectorXcd cmv_eigenvalues(const CmvOperator& op);

} // namespace qwalk
