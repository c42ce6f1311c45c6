#include "qwalk/periodic.hpp"

#include <cmath>
#include <stdexcept>

#include "qwalk/errors.hpp"
#include "qwalk/km_walk.hpp"

namespace qwalk {

namespace {

double rho_real(Complex a) { return std::sqrt(1.0 - std::norm(a)); }

// Quadratic coefficients of the two-periodic Caratheodory function,
// A F^2 + B F + C = 0.
struct TwoPeriodicQuadratic {
    Complex a, b;
    Complex A(Complex z) const {
        const Complex c = a + a * std::conj(b) - std::conj(a) - std::conj(a) * b;
        return -z * z * (b + 1.0) - z * c + 1.0 + std::conj(b);
    }
    Complex Aprime(Complex z) const {
        const Complex c = a + a * std::conj(b) - std::conj(a) - std::conj(a) * b;
        return -2.0 * z * (b + 1.0) - c;
    }
    Complex B(Complex z) const { return -2.0 * (b * z * z + (a + std::conj(a)) * z + std::conj(b)); }
    Complex C(Complex z) const {
        const Complex c = a - a * std::conj(b) - std::conj(a) + std::conj(a) * b;
        return -z * z * (b - 1.0) - z * c - 1.0 + std::conj(b);
    }
    std::pair<Complex, Complex> roots(Complex z) const {
        const Complex Az = A(z), Bz = B(z), Cz = C(z);
        const Complex disc = std::sqrt(Bz * Bz - 4.0 * Az * Cz);
        Complex r1 = (-Bz + disc) / (2.0 * Az);
        Complex r2 = (-Bz - disc) / (2.0 * Az);
        if (std::abs(r1) < std::abs(r2)) std::swap(r1, r2); // r1 the larger, r2 = C/(A r1)
        r2 = Cz / (Az * r1);
        return {r1, r2};
    }
};

} // namespace

Complex chebyshev_u(long k, Complex y) {
    if (k < -1) throw std::invalid_argument("chebyshev_u: need k >= -1");
    if (k == -1) return 0.0;
    Complex prev = 0.0, cur = 1.0;
    for (long j = 0; j < k; ++j) {
        const Complex next = 2.0 * y * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double chebyshev_u(long k, double y) { return chebyshev_u(k, Complex(y, 0.0)).real(); }

Eigen::Matrix2cd szego_transfer_factor(Complex alpha, Complex z) {
    const double rho = rho_real(alpha);
    if (!(rho > 0.0)) throw std::domain_error("szego_transfer_factor: |alpha| >= 1");
    Eigen::Matrix2cd A;
    A << z, -std::conj(alpha), -alpha * z, Complex(1.0);
    return A / rho;
}

namespace {

Eigen::Matrix2cd szego_transfer_factor_inverse(Complex alpha, Complex z) {
    const double rho = rho_real(alpha);
    Eigen::Matrix2cd Ainv;
    Ainv << Complex(1.0), std::conj(alpha), alpha * z, z;
    return Ainv / (rho * z);
}

Complex half_power(Complex z, long p) {
    const double az = std::abs(z);
    if (std::fabs(az - 1.0) < 1e-9) {
        double theta = std::arg(z);
        if (theta < 0) theta += 2.0 * M_PI;
        return std::polar(1.0, 0.5 * p * theta);
    }
    return std::pow(z, 0.5 * static_cast<double>(p));
}

} // namespace

OpucTransfer opuc_transfer(const VerblunskySpec& spec, long p, Complex z) {
    if (p < 1) throw std::invalid_argument("opuc_transfer: need p >= 1");
    if (z == Complex(0.0)) throw std::domain_error("opuc_transfer: z = 0");
    OpucTransfer out;
    out.T = Eigen::Matrix2cd::Identity();
    for (long k = 0; k < p; ++k) out.T = szego_transfer_factor(spec.at(k), z) * out.T;
    out.det = out.T.determinant();
    out.half_power = half_power(z, p);
    out.delta = out.T.trace() / out.half_power;
    return out;
}

std::pair<Complex, Complex> periodic_opuc_closed_form(const VerblunskySpec& spec, long p, long k, long j,
                                                      Complex z) {
    if (j < 0 || j >= p) throw std::invalid_argument("periodic_opuc_closed_form: need 0 <= j < p");
    if (k < 0) throw std::invalid_argument("periodic_opuc_closed_form: need k >= 0");
    const OpucTransfer tr = opuc_transfer(spec, p, z);
    if (std::fabs(std::abs(z) - 1.0) < 1e-9 && std::fabs(tr.delta.imag()) > 1e-8)
        throw std::runtime_error("periodic_opuc_closed_form: discriminant not real on the circle");
    Eigen::Matrix2cd left = Eigen::Matrix2cd::Identity();
    for (long m = 0; m < j; ++m) left = szego_transfer_factor(spec.at(m), z) * left;
    Eigen::Matrix2cd right = Eigen::Matrix2cd::Identity();
    for (long m = j; m < p; ++m) right = right * szego_transfer_factor_inverse(spec.at(m), z);
    const Complex y = 0.5 * tr.delta;
    const Complex uk = chebyshev_u(k, y), ukm1 = chebyshev_u(k - 1, y);
    Complex sk = 1.0;
    for (long m = 0; m < k; ++m) sk *= tr.half_power; // z^{kp/2}
    const Eigen::Matrix2cd bracket = uk * left - tr.half_power * ukm1 * right;
    Eigen::Vector2cd init;
    init << Complex(1.0), Complex(1.0);
    const Eigen::Vector2cd out = sk * (bracket * init);
    return {out(0), out(1)};
}

namespace {

Eigen::Matrix2d oprl_factor(const WalkSpec& walk, long m, double x) {
    Eigen::Matrix2d B;
    B << (x - walk.r(m)) / walk.p(m), -walk.q(m) / walk.p(m), 1.0, 0.0;
    return B;
}

Eigen::Matrix2d oprl_factor_inverse(const WalkSpec& walk, long m, double x) {
    Eigen::Matrix2d Binv;
    Binv << 0.0, 1.0, -walk.p(m) / walk.q(m), (x - walk.r(m)) / walk.q(m);
    return Binv;
}

} // namespace

OprlTransfer oprl_transfer(const WalkSpec& walk, long L, long k0, double x) {
    if (L < 1) throw std::invalid_argument("oprl_transfer: need L >= 1");
    if (k0 < 1) throw std::invalid_argument("oprl_transfer: need k0 >= 1 (q_0 = 0 makes B_0 singular)");
    OprlTransfer out;
    out.T = Eigen::Matrix2d::Identity();
    out.p_prod = 1.0;
    out.q_prod = 1.0;
    for (long m = k0; m < k0 + L; ++m) {
        out.T = oprl_factor(walk, m, x) * out.T;
        out.p_prod *= walk.p(m);
        out.q_prod *= walk.q(m);
    }
    out.delta = out.p_prod * out.T.trace();
    return out;
}

std::pair<double, double> periodic_oprl_closed_form(const WalkSpec& walk, long L, long k0, long k, long j,
                                                    double x) {
    if (j < 0 || j >= L) throw std::invalid_argument("periodic_oprl_closed_form: need 0 <= j < L");
    if (k < 0) throw std::invalid_argument("periodic_oprl_closed_form: need k >= 0");
    for (long m = k0; m < k0 + L; ++m) {
        if (std::fabs(walk.p(m) - walk.p(m + L)) > 1e-14 || std::fabs(walk.q(m) - walk.q(m + L)) > 1e-14 ||
            std::fabs(walk.r(m) - walk.r(m + L)) > 1e-14)
            throw std::invalid_argument("periodic_oprl_closed_form: walk not L-periodic from k0");
    }
    const OprlTransfer tr = oprl_transfer(walk, L, k0, x);
    const double ratio = std::sqrt(tr.q_prod / tr.p_prod);
    const double y = tr.delta / (2.0 * std::sqrt(tr.p_prod * tr.q_prod));

    Eigen::Matrix2d left = Eigen::Matrix2d::Identity();
    for (long m = k0; m < k0 + j; ++m) left = oprl_factor(walk, m, x) * left;
    Eigen::Matrix2d right = Eigen::Matrix2d::Identity();
    for (long m = k0 + j; m < k0 + L; ++m) right = right * oprl_factor_inverse(walk, m, x);
    const std::vector<double> Q = walk_polynomials(walk, k0, x);
    Eigen::Vector2d init;
    init << Q[static_cast<std::size_t>(k0)], (k0 >= 1 ? Q[static_cast<std::size_t>(k0 - 1)] : 0.0);

    double rk = 1.0;
    for (long m = 0; m < k; ++m) rk *= ratio;
    const Eigen::Matrix2d bracket =
        chebyshev_u(k, y) * left - ratio * chebyshev_u(k - 1, y) * right;
    const Eigen::Vector2d out = rk * (bracket * init);
    return {out(0), out(1)};
}

double constant_walk_polys(double p0, double p, double q, long k, double x) {
    if (!(p > 0.0) || !(q > 0.0) || p + q > 1.0 || !(p0 > 0.0) || p0 > 1.0)
        throw std::invalid_argument("constant_walk_polys: need p, q > 0, p + q <= 1, p0 in (0,1]");
    if (k < 0) throw std::invalid_argument("constant_walk_polys: need k >= 0");
    const double r = 1.0 - p - q;
    const double y = (x - r) / (2.0 * std::sqrt(p * q));
    const double amp = std::sqrt(p / q) * (x - 1.0 + p0) / p0 - (x - r) / std::sqrt(p * q);
    return std::pow(q / p, 0.5 * k) * (chebyshev_u(k, y) + amp * chebyshev_u(k - 1, y));
}

ConstantWalkMeasure constant_walk_measure(double p0, double p, double q) {
    if (!(p > 0.0) || !(q > 0.0) || p + q > 1.0 || !(p0 > 0.0) || p0 > 1.0)
        throw std::invalid_argument("constant_walk_measure: need p, q > 0, p + q <= 1, p0 in (0,1]");
    ConstantWalkMeasure out;
    const double sp = std::sqrt(p), sq = std::sqrt(q);
    out.sigma_minus = 1.0 - (sp + sq) * (sp + sq);
    out.sigma_plus = 1.0 - (sp - sq) * (sp - sq);
    out.xi_defined = std::fabs(p0 - p) > 0.0;
    if (out.xi_defined) out.xi = 1.0 - p0 - p0 * q / (p0 - p);

    const double slo = out.sigma_minus, shi = out.sigma_plus;
    // (p0-p)(x-xi) in the cancelled form (p0-p)(x-1+p0) + p0 q, finite at p0 = p
    auto denom = [p0, p, q](double x) { return (p0 - p) * (x - 1.0 + p0) + p0 * q; };
    out.measure.weight = [p0, slo, shi, denom](double x) {
        if (x <= slo || x >= shi) return 0.0;
        return p0 * std::sqrt((x - slo) * (shi - x)) / (2.0 * M_PI * (1.0 - x) * denom(x));
    };
    out.measure.band_lo = slo;
    out.measure.band_hi = shi;
    if (q > p) {
        out.mass_at_one = true;
        out.mass_one = (q - p) / (q - p + p0);
        out.measure.point_masses.push_back({1.0, out.mass_one});
    }
    if (out.xi_defined && (p0 - p) * (p0 - p) > p * q) {
        out.mass_at_xi = true;
        out.mass_xi = ((p0 - p) * (p0 - p) - p * q) / ((p0 - p) * (p0 - p + q));
        out.measure.point_masses.push_back({out.xi, out.mass_xi});
    }
    return out;
}

TwoPeriodicMeasure two_periodic_circle_measure(Complex a, Complex b) {
    if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0)
        throw std::invalid_argument("two_periodic_circle_measure: need a, b inside the unit disk");
    TwoPeriodicMeasure out;
    const double ra = rho_real(a), rb = rho_real(b);
    const double re_ab = (a * std::conj(b)).real();
    out.cos_theta_plus = ra * rb - re_ab;
    out.cos_theta_minus = -ra * rb - re_ab;
    out.theta_plus = std::acos(std::clamp(out.cos_theta_plus, -1.0, 1.0));
    out.theta_minus = std::acos(std::clamp(out.cos_theta_minus, -1.0, 1.0));

    const double band_lo = out.theta_plus, band_hi = out.theta_minus;
    const double rr = ra * ra * rb * rb;
    out.measure.weight = [a, b, rr, re_ab, band_lo, band_hi](double theta) {
        double t = std::fmod(theta, 2.0 * M_PI);
        if (t < 0) t += 2.0 * M_PI;
        const double tm = t <= M_PI ? t : 2.0 * M_PI - t;
        if (tm <= band_lo || tm >= band_hi) return 0.0;
        const Complex z = std::polar(1.0, t);
        const double num2 = rr - std::pow(std::cos(t) + re_ab, 2);
        if (num2 <= 0.0) return 0.0;
        const double den = std::abs(((z - std::conj(a)) * (1.0 + b)).imag());
        return std::sqrt(num2) / den;
    };
    out.measure.bands = {{band_lo, band_hi}, {2.0 * M_PI - band_hi, 2.0 * M_PI - band_lo}};

    // discrete candidates: roots of A(z), always unimodular for a, b in D
    const TwoPeriodicQuadratic quad{a, b};
    const Complex c = a + a * std::conj(b) - std::conj(a) - std::conj(a) * b; // purely imaginary
    const Complex disc = std::sqrt(c * c + 4.0 * std::norm(1.0 + b));
    out.z_plus = (-c + disc) / (2.0 * (b + 1.0));
    out.z_minus = (-c - disc) / (2.0 * (b + 1.0));

    auto mass_of = [&](Complex z0) {
        return (quad.B(z0) / (2.0 * z0 * quad.Aprime(z0))).real();
    };
    auto displayed_mass = [&](Complex z0) {
        const double gp = std::arg(out.z_plus), gm = std::arg(out.z_minus);
        const double s = std::sin(0.5 * (gp - gm));
        return std::abs(2.0 * (a + b * z0).real() / (std::abs(b + 1.0) * s));
    };
    out.plus_included = (a + b * out.z_plus).real() > 0.0;
    out.minus_included = (a + b * out.z_minus).real() < 0.0;
    out.displayed_mass_plus = displayed_mass(out.z_plus);
    out.displayed_mass_minus = displayed_mass(out.z_minus);
    if (out.plus_included) {
        out.mass_plus = mass_of(out.z_plus);
        out.measure.point_masses.push_back({std::arg(out.z_plus), out.mass_plus});
    }
    if (out.minus_included) {
        out.mass_minus = mass_of(out.z_minus);
        out.measure.point_masses.push_back({std::arg(out.z_minus), out.mass_minus});
    }
    return out;
}

Complex two_periodic_caratheodory(Complex a, Complex b, Complex z) {
    if (std::abs(z) >= 1.0) throw std::domain_error("two_periodic_caratheodory: need |z| < 1");
    if (z == Complex(0.0)) return Complex(1.0);
    const TwoPeriodicQuadratic quad{a, b};
    // track the branch radially out from F(0) = 1, doubling steps on ambiguity
    for (long steps = 256; steps <= 4096; steps *= 2) {
        Complex F = 1.0;
        bool ambiguous = false;
        for (long i = 1; i <= steps; ++i) {
            const Complex zi = z * (static_cast<double>(i) / steps);
            const auto [r1, r2] = quad.roots(zi);
            const double d1 = std::abs(r1 - F), d2 = std::abs(r2 - F);
            const double sep = std::abs(r1 - r2);
            if (std::min(d1, d2) > 0.45 * sep && sep > 1e-9) {
                ambiguous = true;
                break;
            }
            F = (d1 <= d2) ? r1 : r2;
        }
        if (!ambiguous) return F;
    }
    throw NonConvergence("two_periodic_caratheodory: branch tracking failed", 0.0);
}

std::vector<Complex> circle_circle_intersections(Complex c1, double r1, Complex c2, double r2) {
    const Complex delta = c2 - c1;
    const double d = std::abs(delta);
    if (d < 1e-15) return {};
    const double along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    const double h2 = r1 * r1 - along * along;
    if (h2 < -1e-12) return {};
    const double h = std::sqrt(std::max(0.0, h2));
    const Complex u = delta / d;
    const Complex base = c1 + along * u;
    const Complex off = Complex(0.0, 1.0) * u * h;
    return {base + off, base - off}; // tangency returns a double root
}

std::vector<Complex> line_circle_intersections(Complex point, Complex dir, Complex center, double radius) {
    const double nd = std::abs(dir);
    if (nd < 1e-15) throw std::invalid_argument("line_circle_intersections: zero direction");
    const Complex u = dir / nd;
    const double t0 = ((center - point) * std::conj(u)).real();
    const Complex closest = point + t0 * u;
    const double d = std::abs(closest - center);
    if (d > radius + 1e-12) return {};
    const double h = std::sqrt(std::max(0.0, radius * radius - d * d));
    return {closest + h * u, closest - h * u};
}

GeometricSpectrum geometric_spectrum(Complex a, Complex b) {
    if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0)
        throw std::invalid_argument("geometric_spectrum: need a, b inside the unit disk");
    GeometricSpectrum out;
    const double ra = rho_real(a), rb = rho_real(b);
    const double ab2 = std::norm(a + b);
    out.r_plus = std::sqrt(ab2 + (ra - rb) * (ra - rb));
    out.r_minus = std::sqrt(ab2 + (ra + rb) * (ra + rb));
    out.tangent_plus = out.r_plus < 1e-12 || std::fabs(out.r_plus - 2.0) < 1e-12;
    out.tangent_minus = std::fabs(out.r_minus - 2.0) < 1e-12;

    auto edge_pair = [](double r) -> std::pair<Complex, Complex> {
        if (r < 1e-12) return {Complex(1.0), Complex(1.0)}; // circle degenerates to the point 1
        const auto pts = circle_circle_intersections(Complex(1.0), r, Complex(0.0), 1.0);
        if (pts.empty()) throw std::runtime_error("geometric_spectrum: edge circles do not intersect");
        return {pts[0], pts[1]};
    };
    const auto [ep1, ep2] = edge_pair(out.r_plus);
    const auto [em1, em2] = edge_pair(out.r_minus);
    out.band_edges = {ep1, ep2, em1, em2};

    out.line_point = std::conj(a);
    out.line_direction = 1.0 + std::conj(b);
    {
        const Complex u = out.line_direction / std::abs(out.line_direction);
        const Complex closest = out.line_point - (out.line_point * std::conj(u)).real() * u;
        out.line_through_center = std::abs(closest) < 1e-12;
    }
    out.discrete_candidates = line_circle_intersections(out.line_point, out.line_direction, Complex(0.0), 1.0);

    const TwoPeriodicQuadratic quad{a, b};
    for (const Complex z0 : out.discrete_candidates) {
        // Re[(1+b)z] > 0 identifies the z+ root, < 0 the z- root; inclusion
        // then follows the Re(a + b z) sign rule for that root.
        const bool plus_type = ((1.0 + b) * z0).real() > 0.0;
        const double re = (a + b * z0).real();
        const bool inc = plus_type ? re > 0.0 : re < 0.0;
        out.included.push_back(inc);
        out.masses.push_back(inc ? (quad.B(z0) / (2.0 * z0 * quad.Aprime(z0))).real() : 0.0);
    }
    return out;
}

} // namespace qwalk
