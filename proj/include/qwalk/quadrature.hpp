#pragma once

#include <vector>

namespace qwalk {

/// Gauss-Legendre rule on [-1,1]: nodes and weights, exact for degree 2n-1.
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;

    explicit GaussLegendre(int n);

    /// Integrate f over [a,b] by affine rescaling of the rule.
    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(mid + half * x[i]);
        return s * half;
    }
};

/// Shared rule cache; rules are immutable once built.
const GaussLegendre& gauss_legendre(int n);

} // namespace qwalk
