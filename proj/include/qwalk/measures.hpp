#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

struct PointMass {
    double position; // theta on the circle, x on the segment
    double mass;
};

/// Probability measure on the unit circle: density w(theta) with respect to
/// dtheta/(2*pi) plus finitely many point masses. `bands` lists the support
/// intervals of the absolutely continuous part; empty means the full circle.
struct CircleMeasure {
    std::function<double(double)> weight;
    std::vector<PointMass> point_masses;
    std::vector<std::pair<double, double>> bands;

    double ac_mass(int quad_nodes = 2048) const;
    double total_mass(int quad_nodes = 2048) const;

    /// Integral of f(e^{i theta}) against the measure.
    Complex integrate(const std::function<Complex(double)>& f, int quad_nodes = 2048) const;
};

/// Probability measure on [-1,1]: density u(x) dx on [band_lo, band_hi]
/// plus point masses. Quadrature substitutes x = cos t so that inverse
/// square-root band-edge singularities become smooth.
struct SegmentMeasure {
    std::function<double(double)> weight;
    std::vector<PointMass> point_masses;
    double band_lo = -1.0;
    double band_hi = 1.0;

    double ac_mass(int quad_nodes = 512) const;
    double total_mass(int quad_nodes = 512) const;

    /// Integral of f(x) against the measure.
    double integrate(const std::function<double(double)>& f, int quad_nodes = 512) const;
};

} // namespace qwalk
