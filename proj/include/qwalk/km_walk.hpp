#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qwalk/coeffs.hpp"
#include "qwalk/measures.hpp"

namespace qwalk {

/// Symmetric tridiagonal matrix with diag r_k and offdiag s_k = sqrt(p_k q_{k+1}).
struct JacobiMatrix {
    Eigen::VectorXd diag;
    Eigen::VectorXd offdiag;

    Eigen::MatrixXd dense() const;
    Eigen::VectorXd eigenvalues() const;
};

JacobiMatrix jacobi_matrix(const WalkSpec& walk, long n);

/// Q_0(x) .. Q_{n_max}(x) by the three-term recurrence,
/// Q_0 = 1, p_0 Q_1 = x - r_0.
std::vector<double> walk_polynomials(const WalkSpec& walk, long n_max, double x);

/// log pi_k; pi_0 = 1, pi_k = (p_0...p_{k-1})/(q_1...q_k).
std::vector<double> pi_constants_log(const WalkSpec& walk, long n_max);
/// pi_k values; reports overflow past representable magnitude.
std::vector<double> pi_constants(const WalkSpec& walk, long n_max);

struct StieltjesResult {
    Complex value;
    double gap = 0.0;
    long depth = 0;
    bool converged = false;
};

/// Cauchy-Stieltjes transform S(z) by the J-fraction truncated at `depth`.
Complex stieltjes_eval(const WalkSpec& walk, Complex z, long depth);
StieltjesResult stieltjes_eval_adaptive(const WalkSpec& walk, Complex z, double tol = 1e-12,
                                        long max_depth = 10000);

/// Boundary-limit schedule eps = 2^{-k}, k = k_min..k_max, linear
/// extrapolation in eps. Grid sweeps are partitioned across `threads`
/// workers and merged by grid index.
struct BoundaryLimitOptions {
    int k_min = 8;
    int k_max = 24;
    long max_depth = 10000;
    double cf_tol = 1e-12;
    double stab_tol = 1e-8;
    double singular_threshold = 1e6;
    int threads = 1;
};

struct SegmentRadialMeasure {
    std::vector<double> x;
    std::vector<double> u;
    std::vector<PointMass> masses;
    std::vector<std::size_t> unstable;
    SegmentMeasure as_measure() const;
};

/// Weight u(x) = lim (1/pi) Im S(x + i eps) on the grid; point masses at
/// grid points where Im S diverges, mass = lim eps * Im S.
SegmentRadialMeasure measure_from_stieltjes(const WalkSpec& walk, const std::vector<double>& x_grid,
                                            const BoundaryLimitOptions& opts = {});

/// Exact spectral measure of the size-n truncation: atoms at the Jacobi
/// eigenvalues, weighted by the squared first components of the
/// eigenvectors. This is the measure a finite-horizon walk actually has.
SegmentMeasure finite_walk_measure(const WalkSpec& walk, long n);

/// Row-stochastic truncation of the one-step matrix (last row loses its p).
Eigen::MatrixXd transition_matrix(const WalkSpec& walk, long size);

/// P_ij(n) on a truncation of i+j+n+8 states; exact for finite n by locality
/// (verified against a truncation 8 states larger).
double n_step_matrix(const WalkSpec& walk, long i, long j, long n);

/// P_ij(n) = pi_j * integral of x^n Q_i Q_j against nu.
double n_step_spectral(const WalkSpec& walk, long i, long j, long n, const SegmentMeasure& nu,
                       int quad_nodes = 512);

enum class NStepRoute { Matrix, Spectral };

double n_step_probability(const WalkSpec& walk, long i, long j, long n, NStepRoute route,
                          const SegmentMeasure* nu = nullptr);

} // namespace qwalk
