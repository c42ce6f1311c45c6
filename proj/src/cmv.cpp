#include "qwalk/cmv.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "qwalk/opuc.hpp"

namespace qwalk {

namespace {

// L and M of size n for coefficients alpha_0..alpha_{n-1} (plus padding):
// L = Theta_0 + Theta_2 + ..., M = 1 + Theta_1 + Theta_3 + ...; a block
// straddling the cut keeps only its upper-left entry, which is exactly the
// upper n x n minor of the infinite factor.
Eigen::MatrixXcd factor_minor(const std::vector<Complex>& alphas, long n, bool even_blocks) {
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(n, n);
    long row = even_blocks ? 0 : 1;
    if (!even_blocks) F(0, 0) = Complex(1.0);
    long k = even_blocks ? 0 : 1;
    while (row < n) {
        const Eigen::Matrix2cd th = theta_block(alphas[static_cast<std::size_t>(k)]);
        if (row + 1 < n) {
            F.block<2, 2>(row, row) = th;
        } else {
            F(row, row) = th(0, 0);
        }
        row += 2;
        k += 2;
    }
    return F;
}

std::vector<Complex> collect(const VerblunskySpec& spec, long count) {
    std::vector<Complex> a(static_cast<std::size_t>(count));
    for (long j = 0; j < count; ++j) a[static_cast<std::size_t>(j)] = spec.at(j);
    return a;
}

} // namespace

Eigen::Matrix2cd theta_block(Complex alpha) {
    if (std::abs(alpha) > 1.0 + 1e-15) throw std::invalid_argument("theta_block: need |alpha| <= 1");
    const double rho = std::sqrt(std::max(0.0, 1.0 - std::norm(alpha)));
    Eigen::Matrix2cd th;
    th << std::conj(alpha), rho, rho, -alpha;
    return th;
}

CmvOperator build_cmv(const VerblunskySpec& spec, long n) {
    if (n < 1) throw std::invalid_argument("build_cmv: need n >= 1");
    CmvOperator op;
    op.size = n;
    op.alphas = collect(spec, n);
    op.L = factor_minor(op.alphas, n, true);
    op.M = factor_minor(op.alphas, n, false);
    op.dense = op.L * op.M;
    return op;
}

CmvOperator finite_cmv(const std::vector<Complex>& alphas) {
    const long n = static_cast<long>(alphas.size());
    if (n < 1) throw std::invalid_argument("finite_cmv: need at least one coefficient");
    for (long j = 0; j + 1 < n; ++j)
        if (std::abs(alphas[static_cast<std::size_t>(j)]) >= 1.0)
            throw std::invalid_argument("finite_cmv: interior coefficient not inside the disk");
    if (std::fabs(std::abs(alphas.back()) - 1.0) > 1e-12)
        throw std::invalid_argument("finite_cmv: terminal coefficient must be unimodular");
    CmvOperator op;
    op.size = n;
    op.alphas = alphas;
    op.L = factor_minor(alphas, n, true);
    op.M = factor_minor(alphas, n, false);
    op.dense = op.L * op.M;
    return op;
}

Complex det_fraction_free(Eigen::MatrixXcd m) {
    const long n = m.rows();
    if (n == 0) return Complex(1.0);
    Complex prev = 1.0;
    double sign = 1.0;
    for (long k = 0; k + 1 < n; ++k) {
        long piv = k;
        for (long i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (piv != k) {
            m.row(piv).swap(m.row(k));
            sign = -sign;
        }
        if (m(k, k) == Complex(0.0)) return Complex(0.0);
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j)
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Complex monic_via_det(const VerblunskySpec& spec, long n, Complex z) {
    if (n < 1 || n > 12) throw std::invalid_argument("monic_via_det: oracle capped at 1 <= n <= 12");
    const CmvOperator op = build_cmv(spec, n);
    Eigen::MatrixXcd m = -op.dense;
    m.diagonal().array() += z;
    return det_fraction_free(std::move(m));
}

Complex cmv_basis_eval(const VerblunskySpec& spec, long n, Complex z) {
    if (n < 0) throw std::invalid_argument("cmv_basis_eval: need n >= 0");
    if (std::fabs(std::abs(z) - 1.0) > 1e-12)
        throw std::domain_error("cmv_basis_eval: z must lie on the unit circle");
    const long k = n / 2;
    const auto [phi, star] = szego_eval_at(spec, n, z);
    const Complex zinv = 1.0 / z;
    Complex zk = 1.0;
    for (long j = 0; j < k; ++j) zk *= zinv;
    return (n % 2 == 0) ? zk * star : zk * phi;
}

Eigen::VectorXcd cmv_eigenvalues(const CmvOperator& op) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.dense, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw std::runtime_error("cmv_eigenvalues: solver failed");
    return es.eigenvalues();
}

} // namespace qwalk
