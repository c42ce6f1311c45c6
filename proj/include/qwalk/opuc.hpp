#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qwalk/coeffs.hpp"
#include "qwalk/measures.hpp"

namespace qwalk {

/// Orthonormal polynomial phi_n together with its reversed partner phi_n^*,
/// both as coefficient lists (index j holds the z^j coefficient).
struct LaurentPair {
    std::vector<Complex> phi;
    std::vector<Complex> phi_star;
    long degree = 0;
    double kappa = 1.0; // leading coefficient of phi, real positive
};

/// Reversed polynomial: coefficient j of the output is the conjugate of
/// coefficient n-j of the input.
std::vector<Complex> reversed(const std::vector<Complex>& poly);

Complex eval_poly(const std::vector<Complex>& coeffs, Complex z);

/// One Szego step: degree n pair -> degree n+1 pair using alpha_n.
LaurentPair szego_step(const LaurentPair& pair, Complex alpha, long n);

/// Pairs 0..n_max starting from phi_0 = phi_0^* = 1. Degrees are capped at
/// 512 to bound rounding growth of the stored coefficients.
std::vector<LaurentPair> orthonormal_sequence(const VerblunskySpec& spec, long n_max);

/// (phi_n(z), phi_n^*(z)) by the value recurrence; no coefficient storage,
/// so it stays accurate at degrees where Horner on stored coefficients
/// would cancel catastrophically.
std::pair<Complex, Complex> szego_eval_at(const VerblunskySpec& spec, long n, Complex z);

struct SchurResult {
    Complex value;
    double gap = 0.0; // difference between the final two truncation depths
    long depth = 0;
    bool converged = false;
};

/// Schur function by the Geronimus continued fraction, truncated after
/// `depth` levels (tail replaced by alpha_depth), evaluated bottom-up.
Complex schur_eval(const VerblunskySpec& spec, Complex z, long depth);

/// Adaptive variant: doubles the truncation depth until the geometric tail
/// estimate from successive gaps falls below tol, or max_depth is reached.
SchurResult schur_eval_adaptive(const VerblunskySpec& spec, Complex z, double tol = 1e-12,
                                long max_depth = 10000);

/// F(z) = (1 + z f(z)) / (1 - z f(z)); F(0) = 1 exactly.
Complex caratheodory_eval(const VerblunskySpec& spec, Complex z, long depth);
SchurResult caratheodory_eval_adaptive(const VerblunskySpec& spec, Complex z, double tol = 1e-12,
                                       long max_depth = 10000);

/// Radial limit machinery: r_k = 1 - 2^{-k}, k = k_min..k_max, with
/// polynomial extrapolation to r = 1. A point is classified singular when
/// Re F exceeds singular_threshold. Grid sweeps are partitioned across
/// `threads` workers and merged by grid index; the per-point computation is
/// pure, so the result does not depend on the partition.
struct RadialLimitOptions {
    int k_min = 4;
    int k_max = 20;
    long max_depth = 10000;
    double cf_tol = 1e-12;
    double stab_tol = 1e-8;
    double singular_threshold = 1e6;
    int threads = 1;
};

struct RadialWeightResult {
    double weight = 0.0;
    bool stable = false;
    bool singular = false;
};

struct RadialMassResult {
    double mass = 0.0;
    bool stable = false;
    std::vector<double> extrapolants; // successive extrapolated values along the schedule
};

RadialWeightResult radial_weight(const VerblunskySpec& spec, double theta,
                                 const RadialLimitOptions& opts = {});

/// lim (1-r)/2 * F(r e^{i theta}); zero for a regular point.
RadialMassResult radial_point_mass(const VerblunskySpec& spec, double theta,
                                   const RadialLimitOptions& opts = {});

struct RadialMeasure {
    std::vector<double> theta;
    std::vector<double> weight;
    std::vector<PointMass> masses;        // grid points classified singular
    std::vector<std::size_t> unstable;    // grid indices where extrapolation failed
    CircleMeasure as_measure() const;     // piecewise-linear weight between samples
};

RadialMeasure measure_from_caratheodory(const VerblunskySpec& spec, const std::vector<double>& theta_grid,
                                        const RadialLimitOptions& opts = {});

} // namespace qwalk
