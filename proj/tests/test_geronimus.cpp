#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qwalk/cmv.hpp"
#include "qwalk/geronimus.hpp"
#include "qwalk/km_walk.hpp"
#include "qwalk/periodic.hpp"

using namespace qwalk;

namespace {

std::vector<double> random_quantizable_alphas(std::mt19937& rng, long count) {
    std::uniform_real_distribution<double> u(-0.85, 0.85);
    std::uniform_real_distribution<double> u0(0.0, 0.8);
    std::vector<double> a = {u0(rng)};
    while (static_cast<long>(a.size()) < count + 1) {
        const double prev = a[2 * ((a.size() - 1) / 2)];
        for (;;) {
            const double b = u(rng), c = u(rng);
            if (0.5 * (c * (1.0 - b) - prev * (1.0 + b)) >= 0.005 && 0.5 * (1.0 - b) * (1.0 - c) >= 0.005) {
                a.push_back(b);
                a.push_back(c);
                break;
            }
        }
    }
    a.resize(static_cast<std::size_t>(count));
    return a;
}

} // namespace

TEST_CASE("alphas_to_walk") {
    // free case
    const WalkSpec freew = alphas_to_walk({0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(freew.p(0) == 1.0);
    CHECK(freew.r(0) == 0.0);
    CHECK(freew.q(1) == 0.5);
    CHECK(freew.r(1) == 0.0);
    CHECK(freew.p(1) == 0.5);

    // k = 0 read-off
    const WalkSpec w0 = alphas_to_walk({0.3, 0.1, 0.5});
    CHECK(w0.q(0) == 0.0);
    CHECK(w0.r(0) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(w0.p(0) == doctest::Approx(0.7).epsilon(1e-15));

    // two-periodic (0.5, -0.5)
    const WalkSpec tp = alphas_to_walk({0.5, -0.5, 0.5, -0.5, 0.5});
    CHECK(tp.q(1) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(tp.p(1) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(tp.r(1) == doctest::Approx(0.25).epsilon(1e-15));

    // negative r is rejected with the index in the message
    try {
        alphas_to_walk({0.8, 0.0, -0.8});
        FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("r_1") != std::string::npos);
    }
    CHECK_THROWS_AS(alphas_to_walk({1.2}), std::invalid_argument);
}

TEST_CASE("walk_to_alphas") {
    // free walk
    for (double a : walk_to_alphas(WalkSpec::constant(1.0, 0.5, 0.5), 12)) CHECK(a == 0.0);

    // constant walk of the two-periodic proposition
    const auto tp = walk_to_alphas(WalkSpec::constant(0.5, 0.375, 0.375), 14);
    for (std::size_t j = 0; j < tp.size(); ++j)
        CHECK(tp[j] == doctest::Approx(j % 2 == 0 ? 0.5 : -0.5).epsilon(1e-14));

    // Legendre walk reproduces the circular-Jacobi coefficients
    const auto leg = walk_to_alphas(WalkSpec::jacobi(0.0, 0.0), 41);
    for (long n = 0; n <= 40; ++n)
        CHECK(std::fabs(leg[static_cast<std::size_t>(n)] - circular_jacobi_alpha(n, 0.0, 0.0)) < 1e-12);

    // round trip both ways
    std::mt19937 rng(51);
    for (int t = 0; t < 10; ++t) {
        const auto alphas = random_quantizable_alphas(rng, 31);
        const WalkSpec walk = alphas_to_walk(alphas);
        const auto back = walk_to_alphas(walk, 30);
        for (std::size_t j = 0; j < back.size(); ++j) CHECK(std::fabs(back[j] - alphas[j]) < 1e-12);
    }
}

TEST_CASE("offdiag_from_alphas") {
    const std::vector<double> zero(8, 0.0);
    CHECK(offdiag_from_alphas(zero, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(offdiag_from_alphas(zero, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(offdiag_from_alphas(zero, 0) == doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-15));

    const std::vector<double> tp = {0.5, -0.5, 0.5, -0.5, 0.5, -0.5};
    CHECK(offdiag_from_alphas(tp, 1) == doctest::Approx(0.375).epsilon(1e-15));

    // equals sqrt(p_k q_{k+1}) of the induced walk
    std::mt19937 rng(52);
    const auto alphas = random_quantizable_alphas(rng, 21);
    const WalkSpec walk = alphas_to_walk(alphas);
    for (long k = 0; k <= 8; ++k)
        CHECK(std::fabs(offdiag_from_alphas(alphas, k) - std::sqrt(walk.p(k) * walk.q(k + 1))) < 1e-14);
}

TEST_CASE("szego measure maps") {
    // uniform circle measure maps to the arcsine law
    CircleMeasure lebesgue;
    lebesgue.weight = [](double) { return 1.0; };
    const SegmentMeasure arcsine = szego_measure_forward(lebesgue);
    for (double x : {-0.9, -0.4, 0.0, 0.3, 0.8})
        CHECK(arcsine.weight(x) == doctest::Approx(1.0 / (M_PI * std::sqrt(1.0 - x * x))).epsilon(1e-12));
    CHECK(arcsine.total_mass(2048) == doctest::Approx(1.0).epsilon(1e-8));

    // two-periodic circle weight pushes to the constant-walk segment weight
    const double a = 0.5, b = -0.5;
    const TwoPeriodicMeasure tp = two_periodic_circle_measure(a, b);
    const SegmentMeasure seg = szego_measure_forward(tp.measure);
    const ConstantWalkMeasure cw = constant_walk_measure(1.0 - a, 0.5 * (1.0 - a) * (1.0 - b),
                                                         0.5 * (1.0 + a) * (1.0 + b));
    for (int g = 1; g < 24; ++g) {
        const double x = cw.sigma_minus + (cw.sigma_plus - cw.sigma_minus) * g / 24.0;
        CHECK(std::fabs(seg.weight(x) - cw.measure.weight(x)) < 1e-8 * std::max(1.0, cw.measure.weight(x)));
    }

    // inverse consistency on weights
    const CircleMeasure back = szego_measure_backward(seg);
    for (int g = 1; g < 16; ++g) {
        const double theta = tp.theta_plus + (tp.theta_minus - tp.theta_plus) * g / 16.0;
        CHECK(std::fabs(back.weight(theta) - tp.measure.weight(theta)) < 1e-10 * std::max(1.0, back.weight(theta)));
    }

    // interior point masses merge pairwise, boundary masses keep the factor
    CircleMeasure withmass;
    withmass.weight = [](double) { return 0.5; };
    withmass.point_masses = {{1.0, 0.2}, {2.0 * M_PI - 1.0, 0.2}, {0.0, 0.1}};
    const SegmentMeasure segm = szego_measure_forward(withmass);
    REQUIRE(segm.point_masses.size() == 2);
    CHECK(segm.point_masses[0].position == doctest::Approx(std::cos(1.0)));
    CHECK(segm.point_masses[0].mass == doctest::Approx(0.4));
    CHECK(segm.point_masses[1].position == 1.0);
    CHECK(segm.point_masses[1].mass == doctest::Approx(0.1));

    // asymmetric measures are rejected
    CircleMeasure asym;
    asym.weight = [](double t) { return 1.0 + 0.3 * std::sin(t); };
    CHECK_THROWS_AS(szego_measure_forward(asym), std::invalid_argument);
}

TEST_CASE("segment_polys_from_circle") {
    // k = 0 is the constant polynomial 1; the free case has p_1(x) = sqrt(2) x
    // (x divided by s_0 = sqrt(1/2) of the free Jacobi matrix)
    for (double x : {-0.7, 0.0, 0.4}) {
        CHECK(segment_polys_from_circle(VerblunskySpec::constant(0.0), 0, x) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(segment_polys_from_circle(VerblunskySpec::constant(0.0), 1, x) ==
              doctest::Approx(std::sqrt(2.0) * x).epsilon(1e-12));
    }

    // against the orthonormal recurrence generated by the Jacobi matrix:
    // x p_k = s_k p_{k+1} + r_k p_k + s_{k-1} p_{k-1}
    std::mt19937 rng(53);
    const auto alphas = random_quantizable_alphas(rng, 21);
    std::vector<Complex> ac(alphas.begin(), alphas.end());
    const VerblunskySpec spec = VerblunskySpec::from_list(ac);
    const WalkSpec walk = alphas_to_walk(alphas);
    std::uniform_real_distribution<double> xs(-0.95, 0.95);
    for (int t = 0; t < 20; ++t) {
        const double x = xs(rng);
        std::vector<double> p = {1.0};
        for (long k = 0; k <= 5; ++k) {
            const double sk = offdiag_from_alphas(alphas, k);
            const double skm1 = k > 0 ? offdiag_from_alphas(alphas, k - 1) : 0.0;
            const double rk = walk.r(k);
            const double prev = k > 0 ? p[static_cast<std::size_t>(k - 1)] : 0.0;
            p.push_back((x * p.back() - rk * p.back() - skm1 * prev) / sk);
        }
        for (long k = 0; k <= 6; ++k)
            CHECK(std::fabs(segment_polys_from_circle(spec, k, x) - p[static_cast<std::size_t>(k)]) <
                  1e-10 * std::max(1.0, std::fabs(p[static_cast<std::size_t>(k)])));
    }

    // two-periodic case matches the Chebyshev form P_k up to sqrt(2/(1-b))
    const double a = 0.5, b = -0.5;
    const VerblunskySpec tps = VerblunskySpec::two_periodic(a, b);
    const double ra = std::sqrt(1.0 - a * a), rb = std::sqrt(1.0 - b * b);
    for (int t = 0; t < 20; ++t) {
        const double x = xs(rng);
        for (long k = 1; k <= 8; ++k) {
            const double y = (x + a * b) / (ra * rb);
            const double Pk = chebyshev_u(k, y) - (1.0 + b) * (x + a) / (ra * rb) * chebyshev_u(k - 1, y);
            const double expect = std::sqrt(2.0 / (1.0 - b)) * Pk;
            CHECK(std::fabs(segment_polys_from_circle(tps, k, x) - expect) <
                  1e-10 * std::max(1.0, std::fabs(expect)));
        }
    }
}

TEST_CASE("naive_quantization") {
    // identical to the spectral map when every even coefficient vanishes
    const std::vector<double> odd_only = {0.0, 0.4, 0.0, -0.3, 0.0, 0.6, 0.0};
    const WalkSpec naive = naive_quantization(odd_only);
    const WalkSpec spectral = alphas_to_walk(odd_only);
    for (long k = 0; k <= 2; ++k) {
        CHECK(naive.p(k) == doctest::Approx(spectral.p(k)).epsilon(1e-15));
        CHECK(naive.q(k) == doctest::Approx(spectral.q(k)).epsilon(1e-15));
        CHECK(naive.r(k) == doctest::Approx(spectral.r(k)).epsilon(1e-15));
    }

    // free case
    const WalkSpec freew = naive_quantization({0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(freew.p(0) == 1.0);
    CHECK(freew.q(1) == 0.5);

    // q_1 / p_0 = (1 + alpha_1) / 2
    std::mt19937 rng(54);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int t = 0; t < 10; ++t) {
        const std::vector<double> a = {u(rng), u(rng), u(rng), u(rng)};
        const WalkSpec w = naive_quantization(a);
        CHECK(w.q(1) / w.p(0) == doctest::Approx(0.5 * (1.0 + a[1])).epsilon(1e-12));
    }

    // differs from the spectral map as soon as an even coefficient is nonzero
    const std::vector<double> both = {0.5, -0.2, 0.6, 0.1, 0.8};
    const WalkSpec n2 = naive_quantization(both);
    const WalkSpec s2 = alphas_to_walk(both);
    CHECK(std::fabs(n2.r(1) - s2.r(1)) > 1e-3);
}

TEST_CASE("restriction identity") {
    // free case: r = 0, s = 1/2 with s_0 = sqrt(2)/2
    const std::vector<double> zero(30, 0.0);
    const RestrictionReport free_rep = restriction_identity_check(zero, 10);
    CHECK(free_rep.ok);
    CHECK(free_rep.max_tridiagonal_residual < 1e-12);
    CHECK(offdiag_from_alphas(zero, 0) == doctest::Approx(0.5 * std::sqrt(2.0)));

    // two-periodic (0.5, -0.5): r = 0.25 off the boundary, s = 0.375
    std::vector<double> tp;
    for (int j = 0; j < 30; ++j) tp.push_back(j % 2 == 0 ? 0.5 : -0.5);
    const RestrictionReport tp_rep = restriction_identity_check(tp, 10);
    CHECK(tp_rep.ok);
    CHECK(tp_rep.max_eigenvector_residual < 1e-12);
    CHECK(offdiag_from_alphas(tp, 1) == doctest::Approx(0.375));

    // random real coefficients, including ones that are no walk at all
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    std::vector<double> rnd;
    for (int j = 0; j < 30; ++j) rnd.push_back(u(rng));
    const RestrictionReport rep = restriction_identity_check(rnd, 12);
    CHECK(rep.ok);
    CHECK(rep.max_tridiagonal_residual < 1e-10);
}

TEST_CASE("spectral consistency of the two truncations") {
    // With terminal coefficient -1 the M-restriction of (C + C^t)/2 closes at
    // exactly the n x n walk Jacobi matrix, so every eigenvalue of J_n is the
    // cosine of an eigenphase of the 2n x 2n finite CMV matrix.
    std::mt19937 rng(56);
    const long n = 32;
    const auto alphas = random_quantizable_alphas(rng, 2 * n - 1);
    const WalkSpec walk = alphas_to_walk(alphas);
    const Eigen::VectorXd jeig = jacobi_matrix(walk, n).eigenvalues();

    std::vector<Complex> ac(alphas.begin(), alphas.end());
    ac.push_back(Complex(-1.0));
    const Eigen::VectorXcd ueig = cmv_eigenvalues(finite_cmv(ac));
    for (long i = 0; i < n; ++i) {
        double best = 1e30;
        for (long j = 0; j < ueig.size(); ++j)
            best = std::min(best, std::fabs(std::cos(std::arg(ueig(j))) - jeig(i)));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("correspondence record round trip") {
    std::mt19937 rng(57);
    const auto alphas = random_quantizable_alphas(rng, 17);
    const CorrespondenceRecord rec = correspondence_from_alphas(alphas);
    CHECK(rec.alphas == alphas);
    CHECK(rec.p.size() == 9);
    CHECK(rec.s.size() == 8);
    const CorrespondenceRecord rec2 = correspondence_from_walk(alphas_to_walk(alphas), 16);
    for (std::size_t j = 0; j < rec2.alphas.size(); ++j)
        CHECK(std::fabs(rec2.alphas[j] - alphas[j]) < 1e-12);
}
