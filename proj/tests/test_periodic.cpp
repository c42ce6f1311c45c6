#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qwalk/km_walk.hpp"
#include "qwalk/opuc.hpp"
#include "qwalk/periodic.hpp"

using namespace qwalk;

namespace {

Complex random_disk(std::mt19937& rng, double rmax) {
    std::uniform_real_distribution<double> u(-rmax, rmax);
    for (;;) {
        const Complex c(u(rng), u(rng));
        if (std::abs(c) <= rmax) return c;
    }
}

} // namespace

TEST_CASE("chebyshev_u") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> ys(-1.0, 1.0);
    CHECK(chebyshev_u(-1, 0.37) == 0.0);
    CHECK(chebyshev_u(0, 0.37) == 1.0);
    for (int t = 0; t < 20; ++t) {
        const double y = ys(rng);
        CHECK(chebyshev_u(2, y) == doctest::Approx(4.0 * y * y - 1.0).epsilon(1e-14));
        const double omega = std::acos(y);
        CHECK(chebyshev_u(5, y) ==
              doctest::Approx(std::sin(6.0 * omega) / std::sin(omega)).epsilon(1e-13));
    }
    CHECK(chebyshev_u(5, 0.3) ==
          doctest::Approx(std::sin(6.0 * std::acos(0.3)) / std::sin(std::acos(0.3))).epsilon(1e-13));
}

TEST_CASE("opuc_transfer") {
    std::mt19937 rng(62);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);

    // p = 2 free: discriminant 2 cos(theta)
    for (int t = 0; t < 10; ++t) {
        const double theta = ang(rng);
        const OpucTransfer tr = opuc_transfer(VerblunskySpec::constant(0.0), 2, std::polar(1.0, theta));
        CHECK(std::abs(tr.delta - Complex(2.0 * std::cos(theta))) < 1e-13);
    }

    // p = 2 general: (z + a conj(b) + conj(a) b + 1/z) / (rho_a rho_b)
    const Complex a(0.4, 0.3), b(-0.2, 0.5);
    const VerblunskySpec tp = VerblunskySpec::two_periodic(a, b);
    const double rr = std::sqrt((1.0 - std::norm(a)) * (1.0 - std::norm(b)));
    for (int t = 0; t < 20; ++t) {
        const Complex z = std::polar(1.0, ang(rng));
        const OpucTransfer tr = opuc_transfer(tp, 2, z);
        const Complex expect = (z + a * std::conj(b) + std::conj(a) * b + 1.0 / z) / rr;
        CHECK(std::abs(tr.delta - expect) < 1e-13);
        CHECK(std::fabs(tr.delta.imag()) < 1e-13); // real on the circle
    }

    // det T_p = z^p at random points on and off the circle
    std::uniform_real_distribution<double> rad(0.3, 1.4);
    for (long p = 1; p <= 5; ++p) {
        std::vector<Complex> cycle;
        for (long j = 0; j < p; ++j) cycle.push_back(random_disk(rng, 0.8));
        const VerblunskySpec spec = VerblunskySpec::periodic(cycle);
        for (int t = 0; t < 100; ++t) {
            const Complex z = std::polar(rad(rng), ang(rng));
            const OpucTransfer tr = opuc_transfer(spec, p, z);
            Complex zp = 1.0;
            for (long j = 0; j < p; ++j) zp *= z;
            CHECK(std::abs(tr.det - zp) < 1e-12 * std::abs(zp));
        }
        // discriminant real on a theta grid
        for (int g = 0; g < 256; ++g) {
            const OpucTransfer tr = opuc_transfer(spec, p, std::polar(1.0, 2.0 * M_PI * g / 256.0));
            CHECK(std::fabs(tr.delta.imag()) < 1e-10);
        }
    }

    // Cayley-Hamilton: z^{-p/2} T + z^{p/2} T^{-1} = Delta I
    {
        std::vector<Complex> cycle = {random_disk(rng, 0.7), random_disk(rng, 0.7), random_disk(rng, 0.7)};
        const VerblunskySpec spec = VerblunskySpec::periodic(cycle);
        for (int t = 0; t < 20; ++t) {
            const Complex z = std::polar(rad(rng), ang(rng));
            const OpucTransfer tr = opuc_transfer(spec, 3, z);
            const Eigen::Matrix2cd lhs =
                tr.T / tr.half_power + tr.half_power * tr.T.inverse();
            const Eigen::Matrix2cd rhs = tr.delta * Eigen::Matrix2cd::Identity();
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
        }
    }

    CHECK_THROWS_AS(opuc_transfer(tp, 2, Complex(0.0)), std::domain_error);
}

TEST_CASE("periodic_opuc_closed_form") {
    std::mt19937 rng(63);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);

    // free two-periodic: phi_2 = z^2
    {
        const Complex z = std::polar(1.0, ang(rng));
        const auto [phi, star] = periodic_opuc_closed_form(VerblunskySpec::constant(0.0), 2, 1, 0, z);
        CHECK(std::abs(phi - z * z) < 1e-13);
        CHECK(std::abs(star - Complex(1.0)) < 1e-13);
    }
    // (0.5, -0.5) at index 6
    {
        const VerblunskySpec spec = VerblunskySpec::two_periodic(0.5, -0.5);
        const Complex z = std::polar(1.0, 0.7);
        const auto [phi, star] = periodic_opuc_closed_form(spec, 2, 3, 0, z);
        const auto [rphi, rstar] = szego_eval_at(spec, 6, z);
        CHECK(std::abs(phi - rphi) < 1e-10 * std::max(1.0, std::abs(rphi)));
        CHECK(std::abs(star - rstar) < 1e-10 * std::max(1.0, std::abs(rstar)));
    }
    // the explicit two-periodic display for phi_2k and phi_2k+1
    {
        const Complex a(0.35, 0.15), b(-0.4, 0.2);
        const VerblunskySpec spec = VerblunskySpec::two_periodic(a, b);
        const double ra = std::sqrt(1.0 - std::norm(a)), rb = std::sqrt(1.0 - std::norm(b));
        for (int t = 0; t < 30; ++t) {
            const Complex z = std::polar(1.0, ang(rng));
            const Complex cosw = (z + a * std::conj(b) + std::conj(a) * b + 1.0 / z) / (2.0 * ra * rb);
            for (long k = 1; k <= 6; ++k) {
                Complex zk = 1.0;
                for (long j = 0; j < k; ++j) zk *= z;
                const Complex uk = chebyshev_u(k, cosw), ukm1 = chebyshev_u(k - 1, cosw);
                const Complex phi2k =
                    zk * uk - (zk / z) * ukm1 * (1.0 + std::conj(b) + z * std::conj(a) * (1.0 + b)) / (ra * rb);
                const Complex phi2k1 =
                    zk * uk * (z - std::conj(a)) / ra - zk * ukm1 * (1.0 + std::conj(b)) / rb;
                const auto even = szego_eval_at(spec, 2 * k, z).first;
                const auto odd = szego_eval_at(spec, 2 * k + 1, z).first;
                CHECK(std::abs(phi2k - even) < 1e-10 * std::max(1.0, std::abs(even)));
                CHECK(std::abs(phi2k1 - odd) < 1e-10 * std::max(1.0, std::abs(odd)));
            }
        }
    }
    CHECK_THROWS_AS(periodic_opuc_closed_form(VerblunskySpec::constant(0.0), 2, 1, 2, Complex(1.0)),
                    std::invalid_argument);
}

TEST_CASE("periodic_oprl_closed_form") {
    std::mt19937 rng(64);
    std::uniform_real_distribution<double> xs(-0.95, 0.95);

    // L = 1, k0 = 1 reduces to the constant-walk closed form
    for (int t = 0; t < 20; ++t) {
        const double x = xs(rng);
        const WalkSpec walk = WalkSpec::constant(0.5, 0.375, 0.375);
        for (long k = 0; k <= 10; ++k) {
            const auto [qn, qn1] = periodic_oprl_closed_form(walk, 1, 1, k, 0, x);
            CHECK(qn == doctest::Approx(constant_walk_polys(0.5, 0.375, 0.375, k + 1, x)).epsilon(1e-10));
            CHECK(qn1 == doctest::Approx(constant_walk_polys(0.5, 0.375, 0.375, k, x)).epsilon(1e-10));
        }
    }
    // symmetric free walk relates to Chebyshev U on the unit band
    {
        const WalkSpec walk = WalkSpec::constant(1.0, 0.5, 0.5);
        for (int t = 0; t < 10; ++t) {
            const double x = xs(rng);
            const auto Q = walk_polynomials(walk, 8, x);
            for (long k = 1; k <= 8; ++k) {
                const auto [qn, qn1] = periodic_oprl_closed_form(walk, 1, 1, k - 1, 0, x);
                CHECK(qn == doctest::Approx(Q[static_cast<std::size_t>(k)]).epsilon(1e-10));
                (void)qn1;
                // Q_k = U_k - x U_{k-1} on this walk
                const double cheb = chebyshev_u(k, x) - x * chebyshev_u(k - 1, x);
                CHECK(qn == doctest::Approx(cheb).epsilon(1e-10));
            }
        }
    }
    // eventually periodic with shift k0 = 2: boundary row, one irregular
    // row, then constant rows
    {
        std::vector<double> p = {0.6, 0.2, 0.4, 0.4, 0.4, 0.4, 0.4, 0.4, 0.4, 0.4, 0.4, 0.4, 0.4, 0.4},
                            q = {0.0, 0.7, 0.35, 0.35, 0.35, 0.35, 0.35, 0.35, 0.35, 0.35, 0.35, 0.35, 0.35, 0.35},
                            r = {0.4, 0.1, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25};
        const WalkSpec walk = WalkSpec::from_lists(p, q, r);
        for (int t = 0; t < 10; ++t) {
            const double x = xs(rng);
            const auto Q = walk_polynomials(walk, 11, x);
            for (long n = 2; n <= 11; ++n) {
                const auto [qn, qn1] = periodic_oprl_closed_form(walk, 1, 2, n - 2, 0, x);
                CHECK(qn == doctest::Approx(Q[static_cast<std::size_t>(n)]).epsilon(1e-10));
                CHECK(qn1 == doctest::Approx(Q[static_cast<std::size_t>(n - 1)]).epsilon(1e-10));
            }
        }
    }
    // L = 3 random periodic walk at index 17
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> pc(3), qc(3), rc(3);
        for (int m = 0; m < 3; ++m) {
            rc[m] = 0.4 * u(rng);
            const double rest = 1.0 - rc[m];
            pc[m] = rest * (0.25 + 0.5 * u(rng));
            qc[m] = rest - pc[m];
        }
        const WalkSpec walk = WalkSpec::periodic(0.55, pc, qc, rc);
        const double x = 0.2;
        const long n = 17, k0 = 1;
        const long k = (n - k0) / 3, j = (n - k0) % 3;
        const auto [qn, qn1] = periodic_oprl_closed_form(walk, 3, k0, k, j, x);
        const auto Q = walk_polynomials(walk, n, x);
        CHECK(qn == doctest::Approx(Q[static_cast<std::size_t>(n)]).epsilon(1e-10));
        CHECK(qn1 == doctest::Approx(Q[static_cast<std::size_t>(n - 1)]).epsilon(1e-10));
    }
}

TEST_CASE("constant_walk_polys") {
    std::mt19937 rng(65);
    std::uniform_real_distribution<double> xs(-1.0, 1.0);
    CHECK(constant_walk_polys(0.5, 0.375, 0.375, 0, 0.3) == 1.0);
    for (int t = 0; t < 10; ++t) {
        const double x = xs(rng);
        CHECK(constant_walk_polys(0.7, 0.3, 0.2, 1, x) == doctest::Approx((x - 0.3) / 0.7).epsilon(1e-13));
    }
    const WalkSpec walk = WalkSpec::constant(0.5, 0.375, 0.375);
    const auto Q = walk_polynomials(walk, 5, 0.1);
    CHECK(constant_walk_polys(0.5, 0.375, 0.375, 5, 0.1) == doctest::Approx(Q[5]).epsilon(1e-12));
    CHECK_THROWS_AS(constant_walk_polys(0.5, 0.6, 0.5, 1, 0.0), std::invalid_argument);

    // the rescaling (p/q)^{k/2} Q_k gives the symmetric-Jacobi family P_k;
    // for the two-periodic walk it matches the Chebyshev display
    const double a = 0.5, b = -0.5;
    const double p0 = 1.0 - a, p = 0.5 * (1 - a) * (1 - b), q = 0.5 * (1 + a) * (1 + b);
    const double ra = std::sqrt(1 - a * a), rb = std::sqrt(1 - b * b);
    for (const double x : {-0.3, 0.1, 0.6}) {
        for (long k = 0; k <= 8; ++k) {
            const double Pk = std::pow(p / q, 0.5 * k) * constant_walk_polys(p0, p, q, k, x);
            const double y = (x + a * b) / (ra * rb);
            const double display =
                chebyshev_u(k, y) - (1 + b) * (x + a) / (ra * rb) * chebyshev_u(k - 1, y);
            CHECK(Pk == doctest::Approx(display).epsilon(1e-11));
        }
    }
}

TEST_CASE("constant_walk_measure") {
    // symmetric q = p case: band [-0.5, 1], xi = -1, no masses
    {
        const ConstantWalkMeasure cm = constant_walk_measure(0.5, 0.375, 0.375);
        CHECK(cm.sigma_plus == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(cm.sigma_minus == doctest::Approx(-0.5).epsilon(1e-14));
        CHECK(cm.xi == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK_FALSE(cm.mass_at_one);
        CHECK_FALSE(cm.mass_at_xi);
        CHECK(cm.measure.total_mass(4096) == doctest::Approx(1.0).epsilon(1e-8));
    }
    // q > p: mass at x = 1
    {
        const ConstantWalkMeasure cm = constant_walk_measure(0.5, 0.2, 0.4);
        CHECK(cm.mass_at_one);
        CHECK(cm.mass_one == doctest::Approx(0.2 / 0.7).epsilon(1e-15));
        CHECK(cm.mass_at_xi); // (p0-p)^2 = 0.09 > pq = 0.08
        CHECK(cm.measure.total_mass(8192) == doctest::Approx(1.0).epsilon(1e-8));
    }
    // symmetric free walk: arcsine-type band [-1, 1]
    {
        const ConstantWalkMeasure cm = constant_walk_measure(1.0, 0.5, 0.5);
        CHECK(cm.sigma_minus == doctest::Approx(-1.0));
        CHECK(cm.sigma_plus == doctest::Approx(1.0));
        CHECK(cm.measure.point_masses.empty());
        CHECK(cm.measure.total_mass(4096) == doctest::Approx(1.0).epsilon(1e-8));
    }
    // p0 = p disables the xi branch
    CHECK_FALSE(constant_walk_measure(0.375, 0.375, 0.375).xi_defined);
}

TEST_CASE("two_periodic_circle_measure") {
    // free case
    {
        const TwoPeriodicMeasure tp = two_periodic_circle_measure(0.0, 0.0);
        for (double t : {0.3, 1.2, 2.8, 4.4}) CHECK(tp.measure.weight(t) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tp.measure.point_masses.empty());
        CHECK(tp.measure.total_mass(2048) == doctest::Approx(1.0).epsilon(1e-8));
    }
    // (0.5, -0.5): band closes at z = 1, no discrete points
    {
        const TwoPeriodicMeasure tp = two_periodic_circle_measure(0.5, -0.5);
        CHECK(tp.cos_theta_plus == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(tp.cos_theta_minus == doctest::Approx(-0.5).epsilon(1e-14));
        CHECK_FALSE(tp.plus_included);
        CHECK_FALSE(tp.minus_included);
        CHECK(tp.measure.total_mass(4096) == doctest::Approx(1.0).epsilon(1e-8));
    }
    // real a = b: z_pm = +-1, mass at 1; displayed closed form is twice the radial limit
    {
        const TwoPeriodicMeasure tp = two_periodic_circle_measure(0.5, 0.5);
        CHECK(std::abs(tp.z_plus - Complex(1.0)) < 1e-14);
        CHECK(std::abs(tp.z_minus + Complex(1.0)) < 1e-14);
        CHECK(tp.plus_included);
        CHECK_FALSE(tp.minus_included);
        CHECK(tp.mass_plus == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(tp.displayed_mass_plus == doctest::Approx(2.0 * tp.mass_plus).epsilon(1e-10));
        CHECK(tp.measure.total_mass(8192) == doctest::Approx(1.0).epsilon(1e-8));
    }
    // complex pair with a discrete point: mass agrees with the radial limit
    {
        const Complex a(0.5, 0.2), b(0.3, 0.0);
        const TwoPeriodicMeasure tp = two_periodic_circle_measure(a, b);
        CHECK(std::fabs(std::abs(tp.z_plus) - 1.0) < 1e-13);
        CHECK(std::fabs(std::abs(tp.z_minus) - 1.0) < 1e-13);
        CHECK(tp.measure.total_mass(8192) == doctest::Approx(1.0).epsilon(1e-8));
        const VerblunskySpec spec = VerblunskySpec::two_periodic(a, b);
        RadialLimitOptions opts;
        opts.k_max = 14;
        opts.max_depth = 400000;
        for (int side = 0; side < 2; ++side) {
            const bool inc = side == 0 ? tp.plus_included : tp.minus_included;
            if (!inc) continue;
            const Complex z0 = side == 0 ? tp.z_plus : tp.z_minus;
            const double mass = side == 0 ? tp.mass_plus : tp.mass_minus;
            const RadialMassResult rm = radial_point_mass(spec, std::arg(z0), opts);
            CHECK(rm.stable);
            CHECK(std::fabs(rm.mass - mass) < 1e-5);
        }
    }
}

TEST_CASE("two_periodic_caratheodory") {
    std::mt19937 rng(66);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI), rad(0.0, 0.9);
    CHECK(std::abs(two_periodic_caratheodory(0.0, 0.0, Complex(0.4, 0.1)) - Complex(1.0)) < 1e-14);

    const Complex a(0.45, -0.2), b(-0.15, 0.35);
    for (int t = 0; t < 30; ++t) {
        const Complex z = std::polar(rad(rng), ang(rng));
        const Complex F = two_periodic_caratheodory(a, b, z);
        // quadratic residual
        const Complex c1 = a + a * std::conj(b) - std::conj(a) - std::conj(a) * b;
        const Complex A = -z * z * (b + 1.0) - z * c1 + 1.0 + std::conj(b);
        const Complex B = -2.0 * (b * z * z + (a + std::conj(a)) * z + std::conj(b));
        const Complex c2 = a - a * std::conj(b) - std::conj(a) + std::conj(a) * b;
        const Complex C = -z * z * (b - 1.0) - z * c2 - 1.0 + std::conj(b);
        CHECK(std::abs(A * F * F + B * F + C) < 1e-10);
        CHECK(F.real() >= -1e-12);
        if (z != Complex(0.0)) {
            // induced Schur function satisfies its own quadratic
            const Complex f = (F - 1.0) / (z * (F + 1.0));
            const Complex resid = (std::conj(a) * z + std::conj(b)) * f * f +
                                  (1.0 / z + std::conj(a) * b - a * std::conj(b) - z) * f - a / z - b;
            CHECK(std::abs(resid) < 1e-10);
        }
    }
}

TEST_CASE("geometric primitives") {
    // unit circle against circle centred at 1 with radius 1: x = 1/2
    const auto pts = circle_circle_intersections(Complex(1.0), 1.0, Complex(0.0), 1.0);
    REQUIRE(pts.size() == 2);
    for (const Complex p : pts) {
        CHECK(p.real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(p) == doctest::Approx(1.0).epsilon(1e-14));
    }
    // real-axis line hits the unit circle at +-1
    const auto line = line_circle_intersections(Complex(0.3), Complex(1.0), Complex(0.0), 1.0);
    REQUIRE(line.size() == 2);
    CHECK(std::abs(line[0] - Complex(1.0)) < 1e-14);
    CHECK(std::abs(line[1] + Complex(1.0)) < 1e-14);
}

TEST_CASE("geometric_spectrum") {
    // a = b = 0.5: r+ = 1, edges at theta = +-pi/3, z+ = 1 on the real axis
    {
        const GeometricSpectrum gs = geometric_spectrum(0.5, 0.5);
        CHECK(gs.r_plus == doctest::Approx(1.0).epsilon(1e-14));
        double best = 1e30;
        for (const Complex e : gs.band_edges)
            best = std::min(best, std::abs(e - std::polar(1.0, M_PI / 3.0)));
        CHECK(best < 1e-12);
        bool found_one = false;
        for (const Complex c : gs.discrete_candidates)
            if (std::abs(c - Complex(1.0)) < 1e-12) found_one = true;
        CHECK(found_one);
        CHECK(gs.tangent_minus); // a = b closes the bands at z = -1
    }
    // a = b generally: r+ = 2|a|
    {
        const Complex a(0.3, 0.4);
        const GeometricSpectrum gs = geometric_spectrum(a, a);
        CHECK(gs.r_plus == doctest::Approx(2.0 * std::abs(a)).epsilon(1e-13));
        const Complex zp = (1.0 + std::conj(a)) / (1.0 + a);
        double best = 1e30;
        for (const Complex c : gs.discrete_candidates) best = std::min(best, std::abs(c - zp));
        CHECK(best < 1e-12);
    }
    // a = -b with |a| = |b|: tangency at z = 1
    {
        const Complex a(0.3, 0.4);
        const GeometricSpectrum gs = geometric_spectrum(a, -a);
        CHECK(gs.tangent_plus);
        CHECK(std::abs(gs.band_edges[0] - Complex(1.0)) < 1e-12);
    }
    // random pairs: edges and candidates match the analytic spectrum, and
    // edges come in conjugate pairs
    std::mt19937 rng(67);
    for (int t = 0; t < 50; ++t) {
        const Complex a = random_disk(rng, 0.85), b = random_disk(rng, 0.85);
        const GeometricSpectrum gs = geometric_spectrum(a, b);
        const TwoPeriodicMeasure tp = two_periodic_circle_measure(a, b);
        // the closed-form z_pm really are roots of A(z), and they are unimodular
        const Complex c1 = a + a * std::conj(b) - std::conj(a) - std::conj(a) * b;
        for (const Complex z : {tp.z_plus, tp.z_minus}) {
            const Complex A = -z * z * (b + 1.0) - z * c1 + 1.0 + std::conj(b);
            CHECK(std::abs(A) < 1e-12);
            CHECK(std::fabs(std::abs(z) - 1.0) < 1e-13);
        }
        for (const double theta : {tp.theta_plus, -tp.theta_plus, tp.theta_minus, -tp.theta_minus}) {
            double best = 1e30;
            for (const Complex e : gs.band_edges) best = std::min(best, std::abs(e - std::polar(1.0, theta)));
            CHECK(best < 1e-12);
        }
        for (const Complex z : {tp.z_plus, tp.z_minus}) {
            double best = 1e30;
            for (const Complex c : gs.discrete_candidates) best = std::min(best, std::abs(c - z));
            CHECK(best < 1e-10);
        }
        for (const Complex e : gs.band_edges) {
            double best = 1e30;
            for (const Complex f : gs.band_edges) best = std::min(best, std::abs(std::conj(e) - f));
            CHECK(best < 1e-12);
        }
    }
}

TEST_CASE("band supports the discriminant condition |Delta_2| < 2") {
    const Complex a(0.4, 0.25), b(-0.35, 0.1);
    const VerblunskySpec spec = VerblunskySpec::two_periodic(a, b);
    const TwoPeriodicMeasure tp = two_periodic_circle_measure(a, b);
    for (int g = 0; g < 512; ++g) {
        const double theta = 2.0 * M_PI * g / 512;
        const double delta = opuc_transfer(spec, 2, std::polar(1.0, theta)).delta.real();
        const double tm = theta <= M_PI ? theta : 2.0 * M_PI - theta;
        const bool in_band = tm > tp.theta_plus + 1e-9 && tm < tp.theta_minus - 1e-9;
        if (in_band) CHECK(std::fabs(delta) < 2.0 + 1e-12);
        const bool outside = tm < tp.theta_plus - 1e-2 || tm > tp.theta_minus + 1e-2;
        if (outside) CHECK(std::fabs(delta) > 2.0 - 1e-9);
    }
}
