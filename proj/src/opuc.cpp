#include "qwalk/opuc.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr long kDegreeCap = 512;

double rho_of(Complex alpha) {
    const double a2 = std::norm(alpha);
    if (a2 >= 1.0) throw std::domain_error("szego_step: |alpha| >= 1");
    return std::sqrt(1.0 - a2);
}

long clamp_depth(const VerblunskySpec& spec, long depth) {
    if (auto h = spec.horizon()) depth = std::min(depth, *h - 1);
    return depth;
}

// Polynomial extrapolation to eps = 0 (Neville) over the last few samples.
double neville_at_zero(const std::vector<double>& eps, const std::vector<double>& val, std::size_t use) {
    const std::size_t n = eps.size();
    use = std::min(use, n);
    std::vector<double> p(val.end() - use, val.end());
    std::vector<double> e(eps.end() - use, eps.end());
    for (std::size_t m = 1; m < use; ++m)
        for (std::size_t i = 0; i + m < use; ++i)
            p[i] = (e[i + m] * p[i] - e[i] * p[i + 1]) / (e[i + m] - e[i]);
    return p[0];
}

} // namespace

std::vector<Complex> reversed(const std::vector<Complex>& poly) {
    if (poly.empty()) throw std::invalid_argument("reversed: empty coefficient list");
    std::vector<Complex> out(poly.size());
    for (std::size_t j = 0; j < poly.size(); ++j) out[j] = std::conj(poly[poly.size() - 1 - j]);
    return out;
}

Complex eval_poly(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

LaurentPair szego_step(const LaurentPair& pair, Complex alpha, long n) {
    if (pair.degree != n) throw std::invalid_argument("szego_step: pair degree does not match n");
    if (n >= kDegreeCap) throw std::invalid_argument("szego_step: degree cap 512 exceeded");
    const double rho = rho_of(alpha);
    const Complex ac = std::conj(alpha);
    const std::size_t m = pair.phi.size(); // == n+1
    LaurentPair next;
    next.degree = n + 1;
    next.kappa = pair.kappa / rho;
    next.phi.assign(m + 1, Complex(0.0));
    next.phi_star.assign(m + 1, Complex(0.0));
    for (std::size_t j = 0; j <= m; ++j) {
        const Complex zphi = (j > 0) ? pair.phi[j - 1] : Complex(0.0);
        const Complex star = (j < m) ? pair.phi_star[j] : Complex(0.0);
        next.phi[j] = (zphi - ac * star) / rho;
        next.phi_star[j] = (-alpha * zphi + star) / rho;
    }
    return next;
}

std::vector<LaurentPair> orthonormal_sequence(const VerblunskySpec& spec, long n_max) {
    if (n_max < 0) throw std::invalid_argument("orthonormal_sequence: need n_max >= 0");
    if (n_max > kDegreeCap) throw std::invalid_argument("orthonormal_sequence: degree cap 512 exceeded");
    std::vector<LaurentPair> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    LaurentPair p;
    p.phi = {Complex(1.0)};
    p.phi_star = {Complex(1.0)};
    out.push_back(p);
    for (long n = 0; n < n_max; ++n) out.push_back(szego_step(out.back(), spec.at(n), n));
    return out;
}

std::pair<Complex, Complex> szego_eval_at(const VerblunskySpec& spec, long n, Complex z) {
    if (n < 0) throw std::invalid_argument("szego_eval_at: need n >= 0");
    Complex phi = 1.0, star = 1.0;
    for (long k = 0; k < n; ++k) {
        const Complex a = spec.at(k);
        const double rho = rho_of(a);
        const Complex nphi = (z * phi - std::conj(a) * star) / rho;
        const Complex nstar = (-a * z * phi + star) / rho;
        phi = nphi;
        star = nstar;
    }
    return {phi, star};
}

Complex schur_eval(const VerblunskySpec& spec, Complex z, long depth) {
    if (std::abs(z) >= 1.0) throw std::domain_error("schur_eval: need |z| < 1");
    if (depth < 1) throw std::invalid_argument("schur_eval: need depth >= 1");
    Complex f = spec.at(depth); // reads past a list horizon throw here
    for (long k = depth - 1; k >= 0; --k) {
        const Complex a = spec.at(k);
        f = (a + z * f) / (1.0 + std::conj(a) * z * f);
    }
    return f;
}

// Truncation depth is doubled until successive bottom-up evaluations agree.
// The error behind a gap g at depth N is estimated geometrically: with decay
// ratio q over one doubling, err(2N) ~ g q/(1-q); q is read off the last two
// gaps when available and bounded by |z|^N otherwise.
SchurResult schur_eval_adaptive(const VerblunskySpec& spec, Complex z, double tol, long max_depth) {
    if (std::abs(z) >= 1.0) throw std::domain_error("schur_eval_adaptive: need |z| < 1");
    const long hi = std::max<long>(1, clamp_depth(spec, max_depth));
    const double r = std::abs(z);
    SchurResult res;
    long depth = std::min<long>(64, hi);
    Complex prev = schur_eval(spec, z, depth);
    double prev_gap = -1.0;
    while (true) {
        const long next = std::min(2 * depth, hi);
        const Complex cur = schur_eval(spec, z, next);
        const double gap = std::abs(cur - prev);
        double q = std::exp(static_cast<double>(depth) * std::log(std::max(r, 1e-300)));
        if (prev_gap > 0.0 && gap > 0.0 && gap < prev_gap) q = std::min(q, gap / prev_gap);
        const double est = (q < 0.9999) ? gap * q / (1.0 - q) : 1e30;
        res.value = cur;
        res.gap = gap;
        res.depth = next;
        if (gap == 0.0 || est < tol) {
            res.converged = true;
            return res;
        }
        if (next >= hi) return res; // not converged within max depth
        prev = cur;
        prev_gap = gap;
        depth = next;
    }
}

Complex caratheodory_eval(const VerblunskySpec& spec, Complex z, long depth) {
    if (z == Complex(0.0)) return Complex(1.0);
    const Complex f = schur_eval(spec, z, depth);
    const Complex den = 1.0 - z * f;
    if (std::abs(den) < 1e-14) throw std::domain_error("caratheodory_eval: 1 - z f(z) vanishes");
    return (1.0 + z * f) / den;
}

SchurResult caratheodory_eval_adaptive(const VerblunskySpec& spec, Complex z, double tol, long max_depth) {
    if (z == Complex(0.0)) return {Complex(1.0), 0.0, 0, true};
    SchurResult s = schur_eval_adaptive(spec, z, tol, max_depth);
    const Complex den = 1.0 - z * s.value;
    if (std::abs(den) < 1e-14) throw std::domain_error("caratheodory_eval_adaptive: 1 - z f(z) vanishes");
    const Complex F = (1.0 + z * s.value) / den;
    // first-order error propagation through f -> F
    s.gap *= 2.0 * std::abs(z) / std::norm(den);
    s.value = F;
    return s;
}

namespace {

struct RadialSamples {
    std::vector<double> eps;   // 1 - r_k, converged points only
    std::vector<Complex> F;    // F(r_k e^{i theta})
};

RadialSamples sample_radially(const VerblunskySpec& spec, double theta, const RadialLimitOptions& opts) {
    RadialSamples s;
    for (int k = opts.k_min; k <= opts.k_max; ++k) {
        const double eps = std::ldexp(1.0, -k); // 2^{-k}
        const Complex z = std::polar(1.0 - eps, theta);
        SchurResult f = schur_eval_adaptive(spec, z, opts.cf_tol, opts.max_depth);
        if (!f.converged) break; // deeper radii only get harder
        const Complex den = 1.0 - z * f.value;
        if (std::abs(den) < 1e-14) break;
        s.eps.push_back(eps);
        s.F.push_back((1.0 + z * f.value) / den);
    }
    return s;
}

} // namespace

RadialWeightResult radial_weight(const VerblunskySpec& spec, double theta, const RadialLimitOptions& opts) {
    RadialWeightResult out;
    const RadialSamples s = sample_radially(spec, theta, opts);
    if (s.eps.size() < 3) return out;
    std::vector<double> re(s.F.size());
    for (std::size_t i = 0; i < s.F.size(); ++i) re[i] = s.F[i].real();
    const std::size_t n = re.size();
    // Re F stabilizes at a weight point and doubles per halved 1-r at a mass.
    if (re[n - 1] > opts.singular_threshold || (re[n - 1] > 50.0 && re[n - 1] > 1.7 * re[n - 2])) {
        out.singular = true;
        return out;
    }
    const double w3 = neville_at_zero(s.eps, re, 3);
    const double w4 = neville_at_zero(s.eps, re, 4);
    out.weight = w4;
    out.stable = std::fabs(w4 - w3) < opts.stab_tol * std::max(1.0, std::fabs(w4));
    return out;
}

RadialMassResult radial_point_mass(const VerblunskySpec& spec, double theta, const RadialLimitOptions& opts) {
    RadialMassResult out;
    const RadialSamples s = sample_radially(spec, theta, opts);
    if (s.eps.size() < 3) return out;
    std::vector<double> m(s.F.size());
    for (std::size_t i = 0; i < s.F.size(); ++i) m[i] = 0.5 * s.eps[i] * s.F[i].real();
    for (std::size_t i = 2; i < m.size(); ++i) {
        std::vector<double> e(s.eps.begin(), s.eps.begin() + i + 1);
        std::vector<double> v(m.begin(), m.begin() + i + 1);
        out.extrapolants.push_back(neville_at_zero(e, v, 3));
    }
    out.mass = out.extrapolants.back();
    const std::size_t n = out.extrapolants.size();
    out.stable = n >= 2 && std::fabs(out.extrapolants[n - 1] - out.extrapolants[n - 2]) <
                               opts.stab_tol * std::max(1.0, std::fabs(out.mass));
    return out;
}

RadialMeasure measure_from_caratheodory(const VerblunskySpec& spec, const std::vector<double>& theta_grid,
                                        const RadialLimitOptions& opts) {
    const std::size_t n = theta_grid.size();
    struct Point {
        double weight = 0.0, mass = 0.0;
        bool singular = false, stable = false;
    };
    std::vector<Point> pts(n);
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const RadialWeightResult w = radial_weight(spec, theta_grid[i], opts);
            if (w.singular) {
                const RadialMassResult m = radial_point_mass(spec, theta_grid[i], opts);
                pts[i] = {0.0, m.mass, true, m.stable};
            } else {
                pts[i] = {w.weight, 0.0, false, w.stable};
            }
        }
    };
    const int workers = std::max(1, std::min<int>(opts.threads, static_cast<int>(n)));
    if (workers == 1) {
        work(0, n);
    } else {
        std::vector<std::future<void>> jobs;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            jobs.push_back(std::async(std::launch::async, work, lo, hi));
        }
        for (auto& j : jobs) j.get();
    }
    RadialMeasure out;
    out.theta = theta_grid;
    out.weight.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        out.weight[i] = pts[i].weight;
        if (pts[i].singular) out.masses.push_back({theta_grid[i], pts[i].mass});
        if (!pts[i].stable) out.unstable.push_back(i);
    }
    return out;
}

CircleMeasure RadialMeasure::as_measure() const {
    CircleMeasure m;
    auto th = theta;
    auto wt = weight;
    m.weight = [th, wt](double t) {
        if (th.empty()) return 0.0;
        auto it = std::lower_bound(th.begin(), th.end(), t);
        if (it == th.begin()) return wt.front();
        if (it == th.end()) return wt.back();
        const std::size_t i = static_cast<std::size_t>(it - th.begin());
        const double f = (t - th[i - 1]) / (th[i] - th[i - 1]);
        return (1.0 - f) * wt[i - 1] + f * wt[i];
    };
    m.point_masses = masses;
    return m;
}

} // namespace qwalk
