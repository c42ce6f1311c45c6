#include "qwalk/km_walk.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "qwalk/errors.hpp"

namespace qwalk {

Eigen::MatrixXd JacobiMatrix::dense() const {
    const long n = diag.size();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    J.diagonal() = diag;
    for (long k = 0; k + 1 < n; ++k) J(k, k + 1) = J(k + 1, k) = offdiag(k);
    return J;
}

Eigen::VectorXd JacobiMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("JacobiMatrix: eigensolver failed");
    return es.eigenvalues();
}

JacobiMatrix jacobi_matrix(const WalkSpec& walk, long n) {
    if (n < 1) throw std::invalid_argument("jacobi_matrix: need n >= 1");
    JacobiMatrix J;
    J.diag.resize(n);
    J.offdiag.resize(std::max<long>(0, n - 1));
    for (long k = 0; k < n; ++k) J.diag(k) = walk.r(k);
    for (long k = 0; k + 1 < n; ++k) J.offdiag(k) = std::sqrt(walk.p(k) * walk.q(k + 1));
    return J;
}

std::vector<double> walk_polynomials(const WalkSpec& walk, long n_max, double x) {
    if (n_max < 0) throw std::invalid_argument("walk_polynomials: need n_max >= 0");
    std::vector<double> Q(static_cast<std::size_t>(n_max) + 1);
    Q[0] = 1.0;
    if (n_max == 0) return Q;
    Q[1] = (x - walk.r(0)) / walk.p(0);
    for (long k = 1; k < n_max; ++k)
        Q[static_cast<std::size_t>(k + 1)] =
            ((x - walk.r(k)) * Q[static_cast<std::size_t>(k)] - walk.q(k) * Q[static_cast<std::size_t>(k - 1)]) /
            walk.p(k);
    return Q;
}

std::vector<double> pi_constants_log(const WalkSpec& walk, long n_max) {
    if (n_max < 0) throw std::invalid_argument("pi_constants: need n_max >= 0");
    std::vector<double> lp(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (long k = 1; k <= n_max; ++k)
        lp[static_cast<std::size_t>(k)] =
            lp[static_cast<std::size_t>(k - 1)] + std::log(walk.p(k - 1)) - std::log(walk.q(k));
    return lp;
}

std::vector<double> pi_constants(const WalkSpec& walk, long n_max) {
    std::vector<double> lp = pi_constants_log(walk, n_max);
    for (double& v : lp) {
        if (v > 709.0) throw std::overflow_error("pi_constants: pi_k overflows double; use pi_constants_log");
        v = std::exp(v);
    }
    return lp;
}

namespace {

void require_off_segment(Complex z) {
    if (z.imag() == 0.0 && std::fabs(z.real()) <= 1.0)
        throw std::domain_error("stieltjes_eval: z must lie off [-1,1]");
}

} // namespace

// S = -1/(z - r_0 - p_0 q_1/(z - r_1 - p_1 q_2/(...))): the diagonal Schur
// complements of J - z carry minus signs on the partial numerators.
Complex stieltjes_eval(const WalkSpec& walk, Complex z, long depth) {
    require_off_segment(z);
    if (depth < 1) throw std::invalid_argument("stieltjes_eval: need depth >= 1");
    Complex D = z - walk.r(depth); // reads past a list horizon throw here
    for (long k = depth - 1; k >= 0; --k) D = z - walk.r(k) - walk.p(k) * walk.q(k + 1) / D;
    return -1.0 / D;
}

// Same doubling strategy as the Schur evaluation: bottom-up truncations at
// depth and 2*depth, with a geometric tail estimate from successive gaps.
StieltjesResult stieltjes_eval_adaptive(const WalkSpec& walk, Complex z, double tol, long max_depth) {
    require_off_segment(z);
    if (auto h = walk.horizon()) max_depth = std::min(max_depth, *h - 1);
    const long hi = std::max<long>(1, max_depth);
    StieltjesResult res;
    long depth = std::min<long>(64, hi);
    Complex prev = stieltjes_eval(walk, z, depth);
    double prev_gap = -1.0;
    while (true) {
        const long next = std::min(2 * depth, hi);
        const Complex cur = stieltjes_eval(walk, z, next);
        const double gap = std::abs(cur - prev);
        double q = 0.999999;
        if (prev_gap > 0.0 && gap > 0.0 && gap < prev_gap) q = gap / prev_gap;
        const double est = (q < 0.9999) ? gap * q / (1.0 - q) : (gap == 0.0 ? 0.0 : 1e30);
        res.value = cur;
        res.gap = gap;
        res.depth = next;
        if (gap == 0.0 || est < tol) {
            res.converged = true;
            return res;
        }
        if (next >= hi) return res;
        prev = cur;
        prev_gap = gap;
        depth = next;
    }
}

SegmentRadialMeasure measure_from_stieltjes(const WalkSpec& walk, const std::vector<double>& x_grid,
                                            const BoundaryLimitOptions& opts) {
    const std::size_t npts = x_grid.size();
    struct Point {
        double u = 0.0, mass = 0.0;
        bool singular = false, unstable = false;
    };
    std::vector<Point> pts(npts);
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double x = x_grid[i];
            std::vector<double> eps_list, im_list;
            for (int k = opts.k_min; k <= opts.k_max; ++k) {
                const double eps = std::ldexp(1.0, -k);
                const StieltjesResult s =
                    stieltjes_eval_adaptive(walk, Complex(x, eps), opts.cf_tol, opts.max_depth);
                if (!s.converged) break;
                eps_list.push_back(eps);
                im_list.push_back(s.value.imag());
            }
            if (eps_list.size() < 3) {
                pts[i].unstable = true;
                continue;
            }
            const std::size_t n = eps_list.size();
            // Im S stabilizes at a weight point and doubles per halved eps at a mass.
            const bool singular = im_list[n - 1] > opts.singular_threshold ||
                                  (im_list[n - 1] > 50.0 && im_list[n - 1] > 1.7 * im_list[n - 2]);
            if (singular) {
                // mass = lim eps * Im S, linear extrapolation over the last pair
                const double m2 = eps_list[n - 1] * im_list[n - 1];
                const double m1 = eps_list[n - 2] * im_list[n - 2];
                const double prev =
                    2.0 * (eps_list[n - 2] * im_list[n - 2]) - eps_list[n - 3] * im_list[n - 3];
                const double mass = 2.0 * m2 - m1;
                pts[i].singular = true;
                pts[i].mass = mass;
                pts[i].unstable = std::fabs(mass - prev) > opts.stab_tol * std::max(1.0, std::fabs(mass));
                continue;
            }
            const double w_now = (2.0 * im_list[n - 1] - im_list[n - 2]) / M_PI;
            const double w_prev = (2.0 * im_list[n - 2] - im_list[n - 3]) / M_PI;
            pts[i].u = w_now;
            pts[i].unstable = std::fabs(w_now - w_prev) > opts.stab_tol * std::max(1.0, std::fabs(w_now));
        }
    };
    const int workers = std::max(1, std::min<int>(opts.threads, static_cast<int>(npts)));
    if (workers == 1) {
        work(0, npts);
    } else {
        std::vector<std::future<void>> jobs;
        const std::size_t chunk = (npts + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            const std::size_t lo = t * chunk, hi = std::min(npts, lo + chunk);
            if (lo >= hi) break;
            jobs.push_back(std::async(std::launch::async, work, lo, hi));
        }
        for (auto& j : jobs) j.get();
    }
    SegmentRadialMeasure out;
    out.x = x_grid;
    out.u.assign(npts, 0.0);
    for (std::size_t i = 0; i < npts; ++i) {
        out.u[i] = pts[i].u;
        if (pts[i].singular) out.masses.push_back({x_grid[i], pts[i].mass});
        if (pts[i].unstable) out.unstable.push_back(i);
    }
    return out;
}

SegmentMeasure SegmentRadialMeasure::as_measure() const {
    SegmentMeasure m;
    auto xs = x;
    auto us = u;
    m.weight = [xs, us](double t) {
        if (xs.empty()) return 0.0;
        auto it = std::lower_bound(xs.begin(), xs.end(), t);
        if (it == xs.begin()) return us.front();
        if (it == xs.end()) return us.back();
        const std::size_t i = static_cast<std::size_t>(it - xs.begin());
        const double f = (t - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return (1.0 - f) * us[i - 1] + f * us[i];
    };
    m.point_masses = masses;
    if (!xs.empty()) {
        m.band_lo = xs.front();
        m.band_hi = xs.back();
    }
    return m;
}

SegmentMeasure finite_walk_measure(const WalkSpec& walk, long n) {
    if (n < 1) throw std::invalid_argument("finite_walk_measure: need n >= 1");
    const JacobiMatrix J = jacobi_matrix(walk, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(J.diag, J.offdiag, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw std::runtime_error("finite_walk_measure: eigensolver failed");
    SegmentMeasure m;
    m.weight = [](double) { return 0.0; };
    for (long k = 0; k < n; ++k) {
        const double w = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
        m.point_masses.push_back({es.eigenvalues()(k), w});
    }
    return m;
}

Eigen::MatrixXd transition_matrix(const WalkSpec& walk, long size) {
    if (size < 1) throw std::invalid_argument("transition_matrix: need size >= 1");
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(size, size);
    for (long k = 0; k < size; ++k) {
        P(k, k) = walk.r(k);
        if (k > 0) P(k, k - 1) = walk.q(k);
        if (k + 1 < size) P(k, k + 1) = walk.p(k);
    }
    return P;
}

namespace {

double n_step_on_truncation(const WalkSpec& walk, long i, long j, long n, long size) {
    const Eigen::MatrixXd P = transition_matrix(walk, size);
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(size);
    v(i) = 1.0;
    for (long s = 0; s < n; ++s) v = v * P;
    return v(j);
}

} // namespace

double n_step_matrix(const WalkSpec& walk, long i, long j, long n) {
    if (i < 0 || j < 0 || n < 0) throw std::invalid_argument("n_step_matrix: need i, j, n >= 0");
    long size = i + j + n + 8, check = size + 8;
    if (auto h = walk.horizon()) {
        // a finite-horizon walk is its own truncation
        size = std::min(size, *h);
        check = std::min(check, *h);
    }
    const double a = n_step_on_truncation(walk, i, j, n, size);
    const double b = n_step_on_truncation(walk, i, j, n, check);
    if (std::fabs(a - b) > 1e-13)
        throw std::runtime_error("n_step_matrix: truncation-sensitive result (paths exceed range bound)");
    return b;
}

double n_step_spectral(const WalkSpec& walk, long i, long j, long n, const SegmentMeasure& nu, int quad_nodes) {
    if (i < 0 || j < 0 || n < 0) throw std::invalid_argument("n_step_spectral: need i, j, n >= 0");
    const double pi_j = pi_constants(walk, j)[static_cast<std::size_t>(j)];
    const long deg = std::max(i, j);
    auto f = [&](double x) {
        const std::vector<double> Q = walk_polynomials(walk, deg, x);
        return std::pow(x, static_cast<double>(n)) * Q[static_cast<std::size_t>(i)] *
               Q[static_cast<std::size_t>(j)];
    };
    return pi_j * nu.integrate(f, quad_nodes);
}

double n_step_probability(const WalkSpec& walk, long i, long j, long n, NStepRoute route,
                          const SegmentMeasure* nu) {
    if (route == NStepRoute::Matrix) return n_step_matrix(walk, i, j, n);
    if (nu == nullptr) throw std::invalid_argument("n_step_probability: spectral route needs a measure");
    return n_step_spectral(walk, i, j, n, *nu);
}

} // namespace qwalk
