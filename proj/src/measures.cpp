#include "qwalk/measures.hpp"

#include <cmath>

#include "qwalk/quadrature.hpp"

namespace qwalk {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

double CircleMeasure::ac_mass(int quad_nodes) const {
    const auto& gl = gauss_legendre(quad_nodes);
    double s = 0.0;
    if (bands.empty()) {
        s = gl.integrate([&](double t) { return weight(t); }, 0.0, kTwoPi);
    } else {
        for (const auto& [lo, hi] : bands)
            s += gl.integrate([&](double t) { return weight(t); }, lo, hi);
    }
    return s / kTwoPi;
}

double CircleMeasure::total_mass(int quad_nodes) const {
    double s = ac_mass(quad_nodes);
    for (const auto& pm : point_masses) s += pm.mass;
    return s;
}

Complex CircleMeasure::integrate(const std::function<Complex(double)>& f, int quad_nodes) const {
    const auto& gl = gauss_legendre(quad_nodes);
    auto band_integral = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        Complex acc = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double t = mid + half * gl.x[i];
            acc += gl.w[i] * weight(t) * f(t);
        }
        return acc * half;
    };
    Complex s = 0.0;
    if (bands.empty()) {
        s = band_integral(0.0, kTwoPi);
    } else {
        for (const auto& [lo, hi] : bands) s += band_integral(lo, hi);
    }
    s /= kTwoPi;
    for (const auto& pm : point_masses) s += pm.mass * f(pm.position);
    return s;
}

double SegmentMeasure::ac_mass(int quad_nodes) const {
    // x = cos t maps [t_hi, t_lo] onto [band_lo, band_hi]; dx = -sin t dt.
    const double t_lo = std::acos(std::min(1.0, std::max(-1.0, band_lo)));
    const double t_hi = std::acos(std::min(1.0, std::max(-1.0, band_hi)));
    const auto& gl = gauss_legendre(quad_nodes);
    return gl.integrate([&](double t) { return weight(std::cos(t)) * std::sin(t); }, t_hi, t_lo);
}

double SegmentMeasure::total_mass(int quad_nodes) const {
    double s = ac_mass(quad_nodes);
    for (const auto& pm : point_masses) s += pm.mass;
    return s;
}

double SegmentMeasure::integrate(const std::function<double(double)>& f, int quad_nodes) const {
    const double t_lo = std::acos(std::min(1.0, std::max(-1.0, band_lo)));
    const double t_hi = std::acos(std::min(1.0, std::max(-1.0, band_hi)));
    const auto& gl = gauss_legendre(quad_nodes);
    double s = gl.integrate(
        [&](double t) {
            const double x = std::cos(t);
            return weight(x) * f(x) * std::sin(t);
        },
        t_hi, t_lo);
    for (const auto& pm : point_masses) s += pm.mass * f(pm.position);
    return s;
}

} // namespace qwalk
