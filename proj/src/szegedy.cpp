#include "qwalk/szegedy.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

constexpr double kRowTol = 1e-12;

void require_stochastic(const Eigen::MatrixXd& P) {
    if (P.rows() != P.cols() || P.rows() < 1)
        throw std::invalid_argument("szegedy: P must be square and nonempty");
    for (long j = 0; j < P.rows(); ++j) {
        if ((P.row(j).array() < 0.0).any())
            throw std::invalid_argument("szegedy: P has a negative entry in row " + std::to_string(j));
        if (std::fabs(P.row(j).sum() - 1.0) > kRowTol)
            throw std::invalid_argument("szegedy: row " + std::to_string(j) + " does not sum to 1");
    }
}

} // namespace

Eigen::MatrixXd stationary_coin_states(const Eigen::MatrixXd& P) {
    require_stochastic(P);
    const long N = P.rows();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(N * N, N);
    for (long j = 0; j < N; ++j)
        for (long k = 0; k < N; ++k) T(j * N + k, j) = std::sqrt(P(j, k));
    return T;
}

WalkOperator walk_operator(const Eigen::MatrixXd& P) {
    WalkOperator op;
    op.num_vertices = P.rows();
    op.T = stationary_coin_states(P);
    const long N = op.num_vertices;
    const long dim = N * N;
    op.R = 2.0 * op.T * op.T.transpose() - Eigen::MatrixXd::Identity(dim, dim);
    op.S = Eigen::MatrixXd::Zero(dim, dim);
    for (long j = 0; j < N; ++j)
        for (long k = 0; k < N; ++k) op.S(j * N + k, k * N + j) = 1.0;
    op.U = op.S * op.R;
    return op;
}

Eigen::VectorXd one_step_distribution(const WalkOperator& op, long j) {
    const long N = op.num_vertices;
    if (j < 0 || j >= N) throw std::invalid_argument("one_step_distribution: vertex out of range");
    const Eigen::VectorXd v = op.U * op.T.col(j);
    Eigen::VectorXd prob = Eigen::VectorXd::Zero(N);
    for (long k = 0; k < N; ++k) prob(k) = v.segment(k * N, N).squaredNorm();
    return prob;
}

Eigen::MatrixXd discriminant(const Eigen::MatrixXd& P) {
    require_stochastic(P);
    const long N = P.rows();
    Eigen::MatrixXd D(N, N);
    for (long j = 0; j < N; ++j)
        for (long k = 0; k < N; ++k) D(j, k) = std::sqrt(P(j, k) * P(k, j));
    return D;
}

std::pair<Complex, Complex> lift_spectrum(double lambda) {
    if (std::fabs(lambda) > 1.0 + 1e-12)
        throw std::domain_error("lift_spectrum: |lambda| > 1");
    const double l = std::clamp(lambda, -1.0, 1.0);
    const double s = std::sqrt(1.0 - l * l);
    return {Complex(l, s), Complex(l, -s)};
}

LiftingReport verify_lifting_operators(const Eigen::MatrixXd& U, const Eigen::MatrixXd& S,
                                       const Eigen::MatrixXd& T, double tol) {
    LiftingReport rep;
    const Eigen::MatrixXd D = T.transpose() * S * T;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
    if (es.info() != Eigen::Success) throw std::runtime_error("verify_lifting: D eigensolver failed");
    rep.d_eigenvalues = es.eigenvalues();

    // Lifted eigenvalues and eigenvector residuals.
    std::vector<Complex> expected;
    for (long i = 0; i < rep.d_eigenvalues.size(); ++i) {
        const double lambda = rep.d_eigenvalues(i);
        const auto [mu_p, mu_m] = lift_spectrum(lambda);
        const Eigen::VectorXd tv = T * es.eigenvectors().col(i);
        const Eigen::VectorXd sv = S * tv;
        // |lambda| = 1 collapses span{T|l>, ST|l>} to one dimension and the
        // pair mu+- degenerates to the single eigenvalue lambda.
        const bool degenerate = (sv - lambda * tv).norm() < 1e-9;
        double pair_resid = 0.0;
        if (degenerate) {
            expected.push_back(Complex(lambda, 0.0));
            pair_resid = (U * tv - lambda * tv).norm();
        } else {
            for (const Complex mu : {mu_p, mu_m}) {
                expected.push_back(mu);
                const Eigen::VectorXcd vec = tv.cast<Complex>() - mu * sv.cast<Complex>();
                const double nrm = vec.norm();
                if (nrm < 1e-12) continue;
                pair_resid = std::max(pair_resid, (U.cast<Complex>() * vec - mu * vec).norm() / nrm);
            }
        }
        rep.pair_residuals.push_back(pair_resid);
        rep.max_vector_residual = std::max(rep.max_vector_residual, pair_resid);
    }

    // Match the expected lifted values against the spectrum of U.
    Eigen::EigenSolver<Eigen::MatrixXd> ues(U, /*computeEigenvectors=*/false);
    if (ues.info() != Eigen::Success) throw std::runtime_error("verify_lifting: U eigensolver failed");
    std::vector<Complex> uspec(ues.eigenvalues().data(), ues.eigenvalues().data() + ues.eigenvalues().size());
    std::vector<bool> used(uspec.size(), false);
    for (const Complex mu : expected) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < uspec.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(uspec[i] - mu);
            if (d < best) {
                best = d;
                best_i = i;
            }
        }
        used[best_i] = true;
        rep.max_phase_mismatch = std::max(rep.max_phase_mismatch, best);
    }
    rep.lifted_count = static_cast<long>(expected.size());
    for (std::size_t i = 0; i < uspec.size(); ++i) {
        if (used[i]) continue;
        ++rep.residual_count;
        const double gap = std::min(std::abs(uspec[i] - 1.0), std::abs(uspec[i] + 1.0));
        rep.max_residual_unit_gap = std::max(rep.max_residual_unit_gap, gap);
    }
    rep.ok = rep.max_vector_residual < tol && rep.max_phase_mismatch < tol && rep.max_residual_unit_gap < tol;
    return rep;
}

LiftingReport verify_lifting(const Eigen::MatrixXd& P, double tol) {
    if (P.rows() > 32) throw std::invalid_argument("verify_lifting: chains capped at N <= 32");
    const WalkOperator op = walk_operator(P);
    return verify_lifting_operators(op.U, op.S, op.T, tol);
}

LiftingReport verify_lifting_halfline(const WalkSpec& walk, long K, double tol) {
    const HalflineOperator op = halfline_blocks(walk, K);
    Eigen::MatrixXd T(op.space.dim(), K + 1);
    for (long j = 0; j <= K; ++j) T.col(j) = halfline_phi(op.space, walk, j);
    return verify_lifting_operators(op.U, op.S, T, tol);
}

// ---- Half-line ----

long HalflineSpace::index(long j, long k) const {
    if (j == 0) {
        if (k == 0) return 0;
        if (k == 1) return 1;
        return -1;
    }
    if (j < 1 || j > cutoff) return -1;
    if (k == j - 1) return 3 * j - 1;
    if (k == j) return 3 * j;
    if (k == j + 1) return 3 * j + 1;
    return -1;
}

std::pair<long, long> HalflineSpace::state(long idx) const {
    if (idx < 0 || idx >= dim()) throw std::out_of_range("HalflineSpace::state: index out of range");
    if (idx == 0) return {0, 0};
    if (idx == 1) return {0, 1};
    const long j = (idx + 1) / 3;
    const long off = idx - 3 * j; // -1, 0, +1
    return {j, j + off};
}

Eigen::Matrix2d halfline_r0_block(double p0, double r0) {
    Eigen::Matrix2d b;
    b << 2.0 * r0 - 1.0, 2.0 * std::sqrt(p0 * r0), 2.0 * std::sqrt(p0 * r0), 2.0 * p0 - 1.0;
    return b;
}

Eigen::Matrix3d halfline_rk_block(double q, double r, double p) {
    Eigen::Matrix3d b;
    b << 2.0 * q - 1.0, 2.0 * std::sqrt(q * r), 2.0 * std::sqrt(p * q),
         2.0 * std::sqrt(q * r), 2.0 * r - 1.0, 2.0 * std::sqrt(p * r),
         2.0 * std::sqrt(p * q), 2.0 * std::sqrt(p * r), 2.0 * p - 1.0;
    return b;
}

HalflineOperator halfline_blocks(const WalkSpec& walk, long K) {
    if (K < 1) throw std::invalid_argument("halfline_blocks: need K >= 1");
    HalflineOperator op;
    op.space.cutoff = K;
    const long dim = op.space.dim();
    op.R = Eigen::MatrixXd::Zero(dim, dim);
    op.S = Eigen::MatrixXd::Zero(dim, dim);

    const double p0 = walk.p(0), r0 = walk.r(0);
    op.boundary_degenerate = p0 <= 0.0;
    op.R.block<2, 2>(0, 0) = halfline_r0_block(p0, r0);
    for (long k = 1; k <= K; ++k)
        op.R.block<3, 3>(3 * k - 1, 3 * k - 1) = halfline_rk_block(walk.q(k), walk.r(k), walk.p(k));

    for (long idx = 0; idx < dim; ++idx) {
        const auto [j, k] = op.space.state(idx);
        const long swapped = op.space.index(k, j);
        op.S(swapped >= 0 ? swapped : idx, idx) = 1.0; // orphan |K,K+1> is fixed
    }
    op.U = op.S * op.R;
    return op;
}

Eigen::VectorXd halfline_phi(const HalflineSpace& space, const WalkSpec& walk, long j) {
    if (j < 0 || j > space.cutoff) throw std::invalid_argument("halfline_phi: vertex out of range");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(space.dim());
    if (j > 0) v(space.index(j, j - 1)) = std::sqrt(walk.q(j));
    v(space.index(j, j)) = std::sqrt(walk.r(j));
    v(space.index(j, j + 1)) = std::sqrt(walk.p(j));
    return v;
}

Eigen::VectorXd halfline_psi(const HalflineSpace& space, const WalkSpec& walk, long j) {
    if (j < 0 || j >= space.cutoff) throw std::invalid_argument("halfline_psi: need j < cutoff");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(space.dim());
    if (j > 0) v(space.index(j - 1, j)) = std::sqrt(walk.q(j));
    v(space.index(j, j)) = std::sqrt(walk.r(j));
    v(space.index(j + 1, j)) = std::sqrt(walk.p(j));
    return v;
}

Eigen::MatrixXd halfline_discriminant(const HalflineOperator& op, const WalkSpec& walk) {
    const long K = op.space.cutoff;
    Eigen::MatrixXd T(op.space.dim(), K + 1);
    for (long j = 0; j <= K; ++j) T.col(j) = halfline_phi(op.space, walk, j);
    return T.transpose() * op.S * T;
}

Eigen::VectorXd one_step_distribution(const HalflineOperator& op, const WalkSpec& walk, long j) {
    const Eigen::VectorXd v = op.U * halfline_phi(op.space, walk, j);
    Eigen::VectorXd prob = Eigen::VectorXd::Zero(op.space.cutoff + 1);
    for (long idx = 0; idx < op.space.dim(); ++idx) {
        const long pos = op.space.state(idx).first;
        prob(pos) += v(idx) * v(idx);
    }
    return prob;
}

CmvExtraction cmv_basis_extraction(const WalkSpec& walk, long K, long n_alphas) {
    if (n_alphas < 1) throw std::invalid_argument("cmv_basis_extraction: need n_alphas >= 1");
    if (n_alphas > 2 * (K - 2))
        throw std::invalid_argument("cmv_basis_extraction: cutoff too small, need n_alphas <= 2(K-2)");
    const HalflineOperator op = halfline_blocks(walk, K);
    CmvExtraction out;
    out.e.push_back(halfline_phi(op.space, walk, 0));
    for (long j = 0; j < n_alphas; ++j) {
        const Eigen::MatrixXd& refl = (j % 2 == 0) ? op.S : op.R;
        const Eigen::VectorXd img = refl * out.e.back();
        const double alpha = out.e.back().dot(img);
        Eigen::VectorXd w = img - alpha * out.e.back();
        const double rho = w.norm();
        if (rho < 1e-13)
            throw std::domain_error("cmv_basis_extraction: rho_" + std::to_string(j) +
                                    " below 1e-13, orientation degenerate");
        out.alphas.push_back(alpha);
        out.e.push_back(w / rho);
    }
    return out;
}

std::vector<Eigen::VectorXd> complement_basis(const WalkSpec& walk, long K, bool normalized) {
    if (K < 1) throw std::invalid_argument("complement_basis: need K >= 1");
    for (long k = 0; k <= K; ++k)
        if (walk.r(k) <= 0.0)
            throw std::domain_error("complement_basis: needs r_k > 0 for all k <= K (degenerate at " +
                                    std::to_string(k) + ")");
    HalflineSpace space{K};
    std::vector<Eigen::VectorXd> out;
    for (long k = 0; k + 1 <= K; ++k) {
        Eigen::VectorXd s = Eigen::VectorXd::Zero(space.dim());
        const double pk = walk.p(k), rk = walk.r(k), rk1 = walk.r(k + 1), qk1 = walk.q(k + 1);
        s(space.index(k, k)) = std::sqrt(pk * rk1);
        s(space.index(k, k + 1)) = -std::sqrt(rk * rk1);
        s(space.index(k + 1, k)) = -std::sqrt(rk * rk1);
        s(space.index(k + 1, k + 1)) = std::sqrt(rk * qk1);
        if (normalized) s.normalize();
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace qwalk
