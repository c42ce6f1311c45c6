#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "qwalk/coeffs.hpp"
#include "qwalk/measures.hpp"

namespace qwalk {

/// Chebyshev polynomial of the second kind, U_{-1} = 0, U_0 = 1.
Complex chebyshev_u(long k, Complex y);
double chebyshev_u(long k, double y);

/// One-step Szego transfer factor A_k(z) = (1/rho_k) [[z, -conj(a)], [-a z, 1]].
Eigen::Matrix2cd szego_transfer_factor(Complex alpha, Complex z);

struct OpucTransfer {
    Eigen::Matrix2cd T;   // A_{p-1} ... A_0
    Complex delta;        // z^{-p/2} tr T, real on the unit circle
    Complex det;          // equals z^p
    Complex half_power;   // the branch used for z^{p/2}
};

/// Transfer matrix and discriminant over one period; z != 0. On the circle
/// the half power uses e^{i p theta / 2} with theta in [0, 2pi), off it the
/// principal branch.
OpucTransfer opuc_transfer(const VerblunskySpec& spec, long p, Complex z);

/// (phi_{kp+j}, phi*_{kp+j}) from the Chebyshev closed form; 0 <= j < p.
std::pair<Complex, Complex> periodic_opuc_closed_form(const VerblunskySpec& spec, long p, long k, long j,
                                                      Complex z);

struct OprlTransfer {
    Eigen::Matrix2d T;  // B_{k0+L-1} ... B_{k0}
    double delta;       // p_(L) tr T
    double p_prod, q_prod;
};

/// Transfer data over one period of the three-term recurrence, starting at
/// absolute index k0 >= 1 (walks have q_0 = 0, so the period lives past 0).
OprlTransfer oprl_transfer(const WalkSpec& walk, long L, long k0, double x);

/// (Q_{k0+kL+j}, Q_{k0+kL+j-1}) from the Chebyshev closed form; 0 <= j < L.
/// The walk must be L-periodic from index k0 on.
std::pair<double, double> periodic_oprl_closed_form(const WalkSpec& walk, long L, long k0, long k, long j,
                                                    double x);

/// Q_k(x) of the constant walk (p_0 boundary, then p, q, r = 1-p-q):
/// Chebyshev closed form equivalent to the recurrence.
double constant_walk_polys(double p0, double p, double q, long k, double x);

struct ConstantWalkMeasure {
    SegmentMeasure measure;
    double sigma_minus = 0.0, sigma_plus = 0.0;
    double xi = 0.0;
    bool xi_defined = false;     // false when p0 = p (xi branch disabled)
    bool mass_at_one = false;
    bool mass_at_xi = false;
    double mass_one = 0.0, mass_xi = 0.0;
};

/// Spectral measure of the constant walk: band [sigma-, sigma+], optional
/// masses at x = 1 (iff q > p) and at x = xi (iff (p0-p)^2 > pq).
ConstantWalkMeasure constant_walk_measure(double p0, double p, double q);

struct TwoPeriodicMeasure {
    CircleMeasure measure;
    double theta_plus = 0.0, theta_minus = 0.0; // band edges in [0, pi]
    double cos_theta_plus = 0.0, cos_theta_minus = 0.0;
    Complex z_plus, z_minus;                    // roots of A(z), unimodular
    bool plus_included = false, minus_included = false;
    double mass_plus = 0.0, mass_minus = 0.0;   // radial-limit (residue) masses
    double displayed_mass_plus = 0.0, displayed_mass_minus = 0.0; // paper's closed form
};

/// Measure of the two-periodic family alpha = (a, b, a, b, ...): band weight
/// w(theta) and the eventual discrete points z+- with their masses. The
/// stored masses are the residues of the quadratic-root F (equal to the
/// radial limits); the displayed_mass fields record the closed-form display,
/// which evaluates to twice the radial limit.
TwoPeriodicMeasure two_periodic_circle_measure(Complex a, Complex b);

/// F(z) as the root of A F^2 + B F + C = 0 with the branch tracked
/// continuously along the radius from F(0) = 1.
Complex two_periodic_caratheodory(Complex a, Complex b, Complex z);

// Ruler-and-compass primitives.
std::vector<Complex> circle_circle_intersections(Complex c1, double r1, Complex c2, double r2);
std::vector<Complex> line_circle_intersections(Complex point, Complex dir, Complex center, double radius);

struct GeometricSpectrum {
    double r_plus = 0.0, r_minus = 0.0;
    Complex line_point, line_direction; // through conj(a) in direction 1+conj(b)
    std::array<Complex, 4> band_edges;  // e^{+-i theta+}, e^{+-i theta-}
    std::vector<Complex> discrete_candidates;
    std::vector<bool> included;
    std::vector<double> masses;
    bool tangent_plus = false;  // r+ = 0 or 2: band edge construction degenerates
    bool tangent_minus = false; // r- = 2: bands close at z = -1 (a = b case)
    bool line_through_center = false;
};

/// Spectrum of the two-periodic family by intersection constructions:
/// band edges from C(1, r+-) against the unit circle, discrete candidates
/// from the line through conj(a) with direction 1+conj(b).
GeometricSpectrum geometric_spectrum(Complex a, Complex b);

} // namespace qwalk
