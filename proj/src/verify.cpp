#include "qwalk/verify.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "qwalk/cmv.hpp"
#include "qwalk/coeffs.hpp"
#include "qwalk/geronimus.hpp"
#include "qwalk/io.hpp"
#include "qwalk/km_walk.hpp"
#include "qwalk/opuc.hpp"
#include "qwalk/periodic.hpp"
#include "qwalk/szegedy.hpp"

namespace qwalk {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_err(Complex a, Complex b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8});
}

double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-8});
}

Complex random_disk_point(std::mt19937& rng, double rmax) {
    std::uniform_real_distribution<double> u(-rmax, rmax);
    for (;;) {
        const Complex c(u(rng), u(rng));
        if (std::abs(c) <= rmax) return c;
    }
}

/// Valid walk with rows bounded away from degeneracy.
WalkSpec random_walk(std::mt19937& rng, long rows) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(rows), q(rows), r(rows);
    p[0] = 0.2 + 0.75 * u(rng);
    q[0] = 0.0;
    r[0] = 1.0 - p[0];
    for (long k = 1; k < rows; ++k) {
        r[k] = 0.6 * u(rng);
        const double rest = 1.0 - r[k];
        const double frac = 0.15 + 0.7 * u(rng);
        p[k] = rest * frac;
        q[k] = rest - p[k];
    }
    return WalkSpec::from_lists(p, q, r);
}

/// Real alpha list whose Geronimus image is a valid walk (r_k >= margin).
std::vector<double> random_quantizable_alphas(std::mt19937& rng, long count) {
    std::uniform_real_distribution<double> u(-0.85, 0.85);
    std::uniform_real_distribution<double> u0(0.0, 0.8);
    std::vector<double> a;
    a.push_back(u0(rng)); // alpha_0 = r_0 >= 0
    while (static_cast<long>(a.size()) < count + 1) {
        const double a_even_prev = a[2 * ((a.size() - 1) / 2)]; // last even-index alpha
        for (int tries = 0;; ++tries) {
            const double b = u(rng), c = u(rng);
            const double rk = 0.5 * (c * (1.0 - b) - a_even_prev * (1.0 + b));
            const double pk = 0.5 * (1.0 - b) * (1.0 - c);
            const double qk = 0.5 * (1.0 + a_even_prev) * (1.0 + b);
            if (rk >= 0.005 && pk >= 0.005 && qk >= 0.005) {
                a.push_back(b);
                a.push_back(c);
                break;
            }
            if (tries > 100000) throw std::runtime_error("random_quantizable_alphas: rejection stalled");
        }
    }
    a.resize(static_cast<std::size_t>(count));
    return a;
}

Eigen::MatrixXd random_stochastic(std::mt19937& rng, long n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Eigen::MatrixXd P(n, n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) P(i, j) = u(rng);
        P.row(i) /= P.row(i).sum();
    }
    return P;
}

// ---- criteria ----

CriterionResult c1_determinant_identity() {
    CriterionResult res{1, "determinant identity: Szego recurrence vs det(zI - C^(n))", false, 0.0, 1e-10,
                        0.0, 5.0, ""};
    const auto t0 = Clock::now();
    std::mt19937 rng(1001);
    std::uniform_int_distribution<long> nd(1, 10);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 20; ++trial) {
        const long n = nd(rng);
        std::vector<Complex> alphas(n);
        for (auto& al : alphas) al = random_disk_point(rng, 0.9);
        const VerblunskySpec spec = VerblunskySpec::from_list(alphas);
        double kappa = 1.0;
        for (long k = 0; k < n; ++k) kappa /= std::sqrt(1.0 - std::norm(alphas[k]));
        for (int m = 0; m < 50; ++m) {
            const Complex z = std::polar(1.0, ang(rng));
            const Complex via_rec = szego_eval_at(spec, n, z).first / kappa;
            const Complex via_det = monic_via_det(spec, n, z);
            res.worst = std::max(res.worst, rel_err(via_rec, via_det));
        }
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c2_geronimus_round_trip() {
    CriterionResult res{2, "Geronimus round trip: walk <-> alphas mutually inverse", false, 0.0, 1e-12,
                        0.0, 1.0, ""};
    const auto t0 = Clock::now();
    std::mt19937 rng(1002);
    for (int trial = 0; trial < 20; ++trial) {
        // 41 coefficients give the 21 walk rows that determine 40 of them back
        const std::vector<double> alphas = random_quantizable_alphas(rng, 41);
        const WalkSpec walk = alphas_to_walk(alphas);
        const std::vector<double> back = walk_to_alphas(walk, 40);
        for (std::size_t j = 0; j < back.size(); ++j)
            res.worst = std::max(res.worst, std::fabs(back[j] - alphas[j]));
        const WalkSpec again = alphas_to_walk(back);
        for (long k = 0; k < 20; ++k) {
            res.worst = std::max(res.worst, std::fabs(again.p(k) - walk.p(k)));
            res.worst = std::max(res.worst, std::fabs(again.q(k) - walk.q(k)));
            res.worst = std::max(res.worst, std::fabs(again.r(k) - walk.r(k)));
        }
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c3_jacobi_family() {
    CriterionResult res{3, "Jacobi family: circular-Jacobi alphas reproduce the walk coefficients", false,
                        0.0, 1e-12, 0.0, 1.0, ""};
    const auto t0 = Clock::now();
    const std::pair<double, double> params[] = {{0.0, 0.0}, {0.5, 0.5}, {0.3, 1.2}};
    for (const auto& [A, B] : params) {
        std::vector<double> alphas;
        for (long m = 0; m <= 82; ++m) alphas.push_back(circular_jacobi_alpha(m, A, B));
        const WalkSpec walk = alphas_to_walk(alphas);
        for (long k = 0; k <= 40; ++k) {
            const JacobiWalkRow row = jacobi_walk_coeffs(k, A, B);
            res.worst = std::max(res.worst, std::fabs(walk.p(k) - row.p));
            res.worst = std::max(res.worst, std::fabs(walk.q(k) - row.q));
            res.worst = std::max(res.worst, std::fabs(walk.r(k) - row.r));
        }
    }
    // spot value q_1 at Legendre parameters
    {
        std::vector<double> alphas;
        for (long m = 0; m <= 4; ++m) alphas.push_back(circular_jacobi_alpha(m, 0.0, 0.0));
        const WalkSpec walk = alphas_to_walk(alphas);
        res.worst = std::max(res.worst, std::fabs(walk.q(1) - 1.0 / 3.0));
        res.detail = "q_1^(0,0) = " + format_double(walk.q(1));
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c4_discriminant_jacobi() {
    CriterionResult res{4, "half-line discriminant equals the Karlin-McGregor Jacobi matrix", false, 0.0,
                        1e-14, 0.0, 1.0, ""};
    const auto t0 = Clock::now();
    std::mt19937 rng(1004);
    const long K = 32;
    for (int trial = 0; trial < 5; ++trial) {
        const WalkSpec walk = random_walk(rng, K + 2);
        const HalflineOperator op = halfline_blocks(walk, K);
        const Eigen::MatrixXd D = halfline_discriminant(op, walk);
        const Eigen::MatrixXd J = jacobi_matrix(walk, K).dense();
        res.worst = std::max(res.worst, (D.topLeftCorner(K, K) - J).cwiseAbs().maxCoeff());
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c5_spectrum_lifting() {
    CriterionResult res{5, "spectrum lifting: U eigenphases and eigenvectors from the discriminant", false,
                        0.0, 1e-8, 0.0, 10.0, ""};
    const auto t0 = Clock::now();
    std::mt19937 rng(1005);
    const long K = 16;
    std::vector<WalkSpec> walks = {WalkSpec::constant(0.5, 0.375, 0.375), random_walk(rng, K + 2),
                                   random_walk(rng, K + 2)};
    for (const WalkSpec& walk : walks) {
        const LiftingReport rep = verify_lifting_halfline(walk, K, res.limit);
        res.worst = std::max({res.worst, rep.max_vector_residual, rep.max_phase_mismatch,
                              rep.max_residual_unit_gap});
        if (!rep.ok) res.detail += "halfline lifting mismatch; ";
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c6_one_step() {
    CriterionResult res{6, "one-step correspondence: quantum distribution equals the stochastic row", false,
                        0.0, 1e-12, 0.0, 1.0, ""};
    const auto t0 = Clock::now();
    std::mt19937 rng(1006);
    std::uniform_int_distribution<long> nd(2, 8);
    for (int trial = 0; trial < 10; ++trial) {
        const long n = nd(rng);
        const Eigen::MatrixXd P = random_stochastic(rng, n);
        const WalkOperator op = walk_operator(P);
        for (long j = 0; j < n; ++j) {
            const Eigen::VectorXd prob = one_step_distribution(op, j);
            res.worst = std::max(res.worst, (prob.transpose() - P.row(j)).cwiseAbs().maxCoeff());
        }
    }
    const long K = 12;
    std::vector<WalkSpec> walks = {WalkSpec::constant(0.75, 0.375, 0.375), random_walk(rng, K + 2),
                                   random_walk(rng, K + 2)};
    for (const WalkSpec& walk : walks) {
        const HalflineOperator op = halfline_blocks(walk, K);
        for (long j : {0L, 3L, 7L}) {
            const Eigen::VectorXd prob = one_step_distribution(op, walk, j);
            Eigen::VectorXd expect = Eigen::VectorXd::Zero(K + 1);
            if (j > 0) expect(j - 1) = walk.q(j);
            expect(j) = walk.r(j);
            expect(j + 1) = walk.p(j);
            res.worst = std::max(res.worst, (prob - expect).cwiseAbs().maxCoeff());
        }
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c7_closed_forms() {
    CriterionResult res{7, "periodic closed forms match the recurrences (OPUC p<=5, OPRL L<=5)", false, 0.0,
                        1e-10, 0.0, 10.0, ""};
    const auto t0 = Clock::now();
    std::mt19937 rng(1007);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_int_distribution<long> idx(0, 64);
    for (long p = 1; p <= 5; ++p) {
        std::vector<Complex> cycle(p);
        for (auto& c : cycle) c = random_disk_point(rng, 0.75);
        const VerblunskySpec spec = VerblunskySpec::periodic(cycle);
        for (int m = 0; m < 100; ++m) {
            const long n = idx(rng);
            const long k = n / p, j = n % p;
            const Complex z = std::polar(1.0, ang(rng));
            const auto [phi_c, star_c] = periodic_opuc_closed_form(spec, p, k, j, z);
            const auto [phi_r, star_r] = szego_eval_at(spec, n, z);
            res.worst = std::max(res.worst, rel_err(phi_c, phi_r));
            res.worst = std::max(res.worst, rel_err(star_c, star_r));
        }
    }
    std::uniform_real_distribution<double> xs(-0.99, 0.99);
    std::uniform_int_distribution<long> idx1(1, 64);
    for (long L = 1; L <= 5; ++L) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> pc(L), qc(L), rc(L);
        for (long m = 0; m < L; ++m) {
            rc[m] = 0.5 * u(rng);
            const double rest = 1.0 - rc[m];
            const double frac = 0.2 + 0.6 * u(rng);
            pc[m] = rest * frac;
            qc[m] = rest - pc[m];
        }
        const WalkSpec walk = WalkSpec::periodic(0.3 + 0.6 * u(rng), pc, qc, rc);
        const long k0 = 1;
        for (int m = 0; m < 100; ++m) {
            const long n = idx1(rng);
            const long k = (n - k0) / L, j = (n - k0) % L;
            const double x = xs(rng);
            const auto [qn, qn1] = periodic_oprl_closed_form(walk, L, k0, k, j, x);
            const std::vector<double> Q = walk_polynomials(walk, n, x);
            res.worst = std::max(res.worst, rel_err(qn, Q[static_cast<std::size_t>(n)]));
            res.worst = std::max(res.worst, rel_err(qn1, Q[static_cast<std::size_t>(n - 1)]));
        }
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c8_two_periodic_triple() {
    CriterionResult res{8, "two-periodic measure: closed form vs quadratic-root and continued-fraction "
                           "radial limits",
                        false, 0.0, 1e-6, 0.0, 30.0, ""};
    const auto t0 = Clock::now();
    std::mt19937 rng(1008);
    int accepted = 0;
    while (accepted < 5) {
        const Complex a = random_disk_point(rng, 0.6);
        const Complex b = random_disk_point(rng, 0.6);
        const TwoPeriodicMeasure tp = two_periodic_circle_measure(a, b);
        const double width = tp.theta_minus - tp.theta_plus;
        if (width < 0.5) continue;
        // keep eventual discrete points clear of the evaluation band
        const double gp = std::fabs(std::arg(tp.z_plus)), gm = std::fabs(std::arg(tp.z_minus));
        auto dist_to_band = [&](double g) {
            if (g < tp.theta_plus) return tp.theta_plus - g;
            if (g > tp.theta_minus) return g - tp.theta_minus;
            return 0.0;
        };
        if (dist_to_band(gp) < 0.05 || dist_to_band(gm) < 0.05) continue;
        ++accepted;

        const VerblunskySpec spec = VerblunskySpec::two_periodic(a, b);
        RadialLimitOptions opts;
        opts.k_min = 4;
        opts.k_max = 12;
        opts.max_depth = 1000000;
        opts.cf_tol = 1e-11;
        for (int g = 0; g < 64; ++g) {
            const double frac = 0.10 + 0.80 * g / 63.0;
            const double theta = tp.theta_plus + frac * width;
            const double w1 = tp.measure.weight(theta);
            // quadratic-root radial limit
            std::vector<double> eps, reF;
            for (int k = 4; k <= 12; ++k) {
                const double e = std::ldexp(1.0, -k);
                eps.push_back(e);
                reF.push_back(two_periodic_caratheodory(a, b, std::polar(1.0 - e, theta)).real());
            }
            std::vector<double> e4(eps.end() - 4, eps.end()), v4(reF.end() - 4, reF.end());
            for (std::size_t mm = 1; mm < 4; ++mm)
                for (std::size_t i = 0; i + mm < 4; ++i)
                    v4[i] = (e4[i + mm] * v4[i] - e4[i] * v4[i + 1]) / (e4[i + mm] - e4[i]);
            const double w2 = v4[0];
            // continued-fraction radial limit
            const RadialWeightResult rw = radial_weight(spec, theta, opts);
            const double w3 = rw.weight;
            const double scale = std::max({1.0, std::fabs(w1), std::fabs(w2), std::fabs(w3)});
            res.worst = std::max(res.worst, std::fabs(w1 - w2) / scale);
            res.worst = std::max(res.worst, std::fabs(w1 - w3) / scale);
            res.worst = std::max(res.worst, std::fabs(w2 - w3) / scale);
        }
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c9_karlin_mcgregor() {
    CriterionResult res{9, "Karlin-McGregor identity: matrix powers vs spectral integrals", false, 0.0, 1e-6,
                        0.0, 10.0, ""};
    const auto t0 = Clock::now();
    const std::array<std::array<double, 3>, 2> walks = {{{0.5, 0.375, 0.375}, {0.5, 0.2, 0.4}}};
    for (const auto& w : walks) {
        const WalkSpec walk = WalkSpec::constant(w[0], w[1], w[2]);
        const ConstantWalkMeasure cm = constant_walk_measure(w[0], w[1], w[2]);
        for (long n = 0; n <= 10; ++n)
            for (long i = 0; i <= 4; ++i)
                for (long j = 0; j <= 4; ++j) {
                    const double pm = n_step_matrix(walk, i, j, n);
                    const double ps = n_step_spectral(walk, i, j, n, cm.measure, 1024);
                    res.worst = std::max(res.worst, std::fabs(pm - ps));
                }
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c10_geometric_construction() {
    CriterionResult res{10, "geometric spectrum construction matches the analytic formulas", false, 0.0,
                        1e-10, 0.0, 5.0, ""};
    const auto t0 = Clock::now();
    std::mt19937 rng(1010);
    auto check_pair = [&](Complex a, Complex b) {
        const GeometricSpectrum gs = geometric_spectrum(a, b);
        const TwoPeriodicMeasure tp = two_periodic_circle_measure(a, b);
        const Complex analytic_edges[4] = {std::polar(1.0, tp.theta_plus), std::polar(1.0, -tp.theta_plus),
                                           std::polar(1.0, tp.theta_minus),
                                           std::polar(1.0, -tp.theta_minus)};
        for (const Complex e : analytic_edges) {
            double best = 1e30;
            for (const Complex g : gs.band_edges) best = std::min(best, std::abs(g - e));
            res.worst = std::max(res.worst, best);
        }
        for (const Complex z : {tp.z_plus, tp.z_minus}) {
            double best = 1e30;
            for (const Complex g : gs.discrete_candidates) best = std::min(best, std::abs(g - z));
            res.worst = std::max(res.worst, best);
        }
    };
    for (int trial = 0; trial < 50; ++trial) check_pair(random_disk_point(rng, 0.85), random_disk_point(rng, 0.85));
    // Geronimus degeneration a = b
    {
        const Complex a(0.3, 0.4);
        const GeometricSpectrum gs = geometric_spectrum(a, a);
        res.worst = std::max(res.worst, std::fabs(gs.r_plus - 2.0 * std::abs(a)));
        const Complex zp = (1.0 + std::conj(a)) / (1.0 + a);
        double best = 1e30;
        for (const Complex g : gs.discrete_candidates) best = std::min(best, std::abs(g - zp));
        res.worst = std::max(res.worst, best);
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c11_complement() {
    CriterionResult res{11, "complement basis: sigma_k orthogonal to phi/psi with R sigma = -sigma, "
                            "S sigma = sigma",
                        false, 0.0, 1e-12, 0.0, 1.0, ""};
    const auto t0 = Clock::now();
    std::mt19937 rng(1011);
    const long K = 16;
    std::vector<WalkSpec> walks = {WalkSpec::constant(0.5, 0.375, 0.375)};
    for (int t = 0; t < 2; ++t) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> p(K + 2), q(K + 2), r(K + 2);
        p[0] = 0.3 + 0.4 * u(rng);
        q[0] = 0.0;
        r[0] = 1.0 - p[0];
        for (long k = 1; k < K + 2; ++k) {
            r[k] = 0.1 + 0.4 * u(rng);
            const double rest = 1.0 - r[k];
            const double frac = 0.2 + 0.6 * u(rng);
            p[k] = rest * frac;
            q[k] = rest - p[k];
        }
        walks.push_back(WalkSpec::from_lists(p, q, r));
    }
    for (const WalkSpec& walk : walks) {
        const HalflineOperator op = halfline_blocks(walk, K);
        const auto sigmas = complement_basis(walk, K);
        for (long k = 0; k < static_cast<long>(sigmas.size()); ++k) {
            const Eigen::VectorXd& s = sigmas[static_cast<std::size_t>(k)];
            for (long j = 0; j < K; ++j) {
                res.worst = std::max(res.worst, std::fabs(halfline_phi(op.space, walk, j).dot(s)));
                res.worst = std::max(res.worst, std::fabs(halfline_psi(op.space, walk, j).dot(s)));
            }
            res.worst = std::max(res.worst, (op.R * s + s).cwiseAbs().maxCoeff());
            res.worst = std::max(res.worst, (op.S * s - s).cwiseAbs().maxCoeff());
        }
    }
    res.seconds = seconds_since(t0);
    res.passed = res.worst < res.limit && res.seconds < res.time_limit;
    return res;
}

CriterionResult c12_boundary_mass() {
    CriterionResult res{12, "boundary-mass arbitration at a = b = 1/2 (radial-limit oracle)", false, 0.0,
                        1e-4, 0.0, 60.0, ""};
    const auto t0 = Clock::now();
    const Complex a(0.5, 0.0);
    const VerblunskySpec spec = VerblunskySpec::two_periodic(a, a);
    RadialLimitOptions opts;
    opts.k_min = 4;
    opts.k_max = 14;
    opts.max_depth = 300000;
    opts.cf_tol = 1e-11;
    opts.stab_tol = 1e-4;
    const RadialMassResult rm = radial_point_mass(spec, 0.0, opts);
    const double nu_mass = (a.real() + a.real()) / (1.0 + a.real()); // nu({1}) = (a+b)/(1+b) = 2/3
    const double cand1 = nu_mass, cand2 = 2.0 * nu_mass;
    const double d1 = std::fabs(rm.mass - cand1), d2 = std::fabs(rm.mass - cand2);
    const char* supported = d1 < d2 ? "1x" : "2x";
    const std::size_t ne = rm.extrapolants.size();
    const double spread = ne >= 2 ? std::fabs(rm.extrapolants[ne - 1] - rm.extrapolants[ne - 2]) : 1e30;
    std::ostringstream ss;
    ss << "oracle mu({1}) = " << format_double(rm.mass) << ", nu({1}) = " << format_double(nu_mass)
       << ", candidates 1x = " << format_double(cand1) << " / 2x = " << format_double(cand2)
       << ", oracle supports " << supported << " (distances " << format_double(d1) << " vs "
       << format_double(d2) << "), schedule spread " << format_double(spread);
    res.detail = ss.str();
    res.worst = spread;
    const bool decisive = std::min(d1, d2) * 10.0 < std::max(d1, d2);
    res.passed = rm.stable && decisive && spread < res.limit && seconds_since(t0) < res.time_limit;
    res.seconds = seconds_since(t0);
    return res;
}

} // namespace

std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> out;
    out.push_back(c1_determinant_identity());
    out.push_back(c2_geronimus_round_trip());
    out.push_back(c3_jacobi_family());
    out.push_back(c4_discriminant_jacobi());
    out.push_back(c5_spectrum_lifting());
    out.push_back(c6_one_step());
    out.push_back(c7_closed_forms());
    out.push_back(c8_two_periodic_triple());
    out.push_back(c9_karlin_mcgregor());
    out.push_back(c10_geometric_construction());
    out.push_back(c11_complement());
    out.push_back(c12_boundary_mass());
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

nlohmann::json acceptance_to_json(const std::vector<CriterionResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results)
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"passed", r.passed},
                       {"worst_residual", r.worst},
                       {"tolerance", r.limit},
                       {"seconds", r.seconds},
                       {"time_limit", r.time_limit},
                       {"detail", r.detail}});
    return nlohmann::json{{"criteria", arr}, {"all_passed", all_passed(results)}};
}

} // namespace qwalk
