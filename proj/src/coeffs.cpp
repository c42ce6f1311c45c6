#include "qwalk/coeffs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

constexpr double kSumTol = 1e-12;

void require_unit_disk(Complex a, long n) {
    if (std::abs(a) >= 1.0)
        throw std::invalid_argument("Verblunsky coefficient |alpha_" + std::to_string(n) +
                                    "| = " + std::to_string(std::abs(a)) + " is not inside the unit disk");
}

void require_walk_row(double p, double q, double r, long k) {
    const std::string at = " at k = " + std::to_string(k);
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("walk needs p in (0,1]" + at);
    if (k == 0 && q != 0.0) throw std::invalid_argument("walk needs q_0 = 0");
    if (k > 0 && !(q > 0.0)) throw std::invalid_argument("walk needs q > 0" + at);
    if (r < 0.0) throw std::invalid_argument("walk needs r >= 0" + at);
    if (std::fabs(p + q + r - 1.0) > kSumTol)
        throw std::invalid_argument("walk row does not sum to 1" + at);
}

JacobiWalkRow jacobi_row_unchecked(long n, double a, double b) {
    JacobiWalkRow out{};
    if (n == 0) {
        // n = 0 forms with the common factors (2n+a+b), (n+a+b+1) cancelled;
        // the raw quotients are 0/0 when a+b or a+b+1 vanishes.
        out.p = 2.0 * (a + 1.0) / (a + b + 2.0);
        out.r = (b - a) / (a + b + 2.0);
        out.q = 0.0;
    } else {
        const double s = 2.0 * n + a + b;
        out.p = 2.0 * (n + a + 1.0) * (n + a + b + 1.0) / ((s + 1.0) * (s + 2.0));
        out.r = (b * b - a * a) / (s * (s + 2.0));
        out.q = 2.0 * n * (n + b) / (s * (s + 1.0));
    }
    out.walk_valid = out.r >= 0.0;
    return out;
}

} // namespace

double circular_jacobi_alpha(long n, double a, double b) {
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("circular_jacobi_alpha: need a, b > -1");
    if (n < 0) throw std::invalid_argument("circular_jacobi_alpha: need n >= 0");
    const double sign = (n % 2 == 0) ? -1.0 : 1.0; // (-1)^{n+1}
    return -(a + 0.5 + sign * (b + 0.5)) / (n + a + b + 2.0);
}

JacobiWalkRow jacobi_walk_coeffs(long n, double a, double b) {
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("jacobi_walk_coeffs: need a, b > -1");
    if (n < 0) throw std::invalid_argument("jacobi_walk_coeffs: need n >= 0");
    return jacobi_row_unchecked(n, a, b);
}

double jacobi_poly_eval(long n, double a, double b, double x) {
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("jacobi_poly_eval: need a, b > -1");
    if (n < 0) throw std::invalid_argument("jacobi_poly_eval: need n >= 0");
    double prev = 0.0, cur = 1.0; // P_{-1}, P_0
    for (long m = 0; m < n; ++m) {
        double A, B, C;
        if (m == 0) {
            A = 2.0 / (a + b + 2.0);
            B = (b - a) / (a + b + 2.0);
            C = 0.0;
        } else {
            const double s = 2.0 * m + a + b;
            A = 2.0 * (m + 1.0) * (m + a + b + 1.0) / ((s + 1.0) * (s + 2.0));
            B = (b * b - a * a) / (s * (s + 2.0));
            C = 2.0 * (m + a) * (m + b) / (s * (s + 1.0));
        }
        const double next = ((x - B) * cur - C * prev) / A;
        prev = cur;
        cur = next;
    }
    return cur;
}

// ---- VerblunskySpec ----

VerblunskySpec VerblunskySpec::constant(Complex a) {
    require_unit_disk(a, 0);
    VerblunskySpec s;
    s.kind_ = Kind::Constant;
    s.cycle_ = {a};
    return s;
}

VerblunskySpec VerblunskySpec::two_periodic(Complex a, Complex b) {
    require_unit_disk(a, 0);
    require_unit_disk(b, 1);
    VerblunskySpec s;
    s.kind_ = Kind::TwoPeriodic;
    s.cycle_ = {a, b};
    return s;
}

VerblunskySpec VerblunskySpec::periodic(std::vector<Complex> cycle) {
    if (cycle.empty()) throw std::invalid_argument("VerblunskySpec::periodic: empty cycle");
    for (std::size_t j = 0; j < cycle.size(); ++j) require_unit_disk(cycle[j], static_cast<long>(j));
    VerblunskySpec s;
    s.kind_ = Kind::Periodic;
    s.cycle_ = std::move(cycle);
    return s;
}

VerblunskySpec VerblunskySpec::from_list(std::vector<Complex> values) {
    for (std::size_t j = 0; j < values.size(); ++j) require_unit_disk(values[j], static_cast<long>(j));
    VerblunskySpec s;
    s.kind_ = Kind::List;
    s.cycle_ = std::move(values);
    return s;
}

VerblunskySpec VerblunskySpec::circular_jacobi(double a, double b) {
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("circular_jacobi: need a, b > -1");
    VerblunskySpec s;
    s.kind_ = Kind::CircularJacobi;
    s.cj_a_ = a;
    s.cj_b_ = b;
    return s;
}

VerblunskySpec VerblunskySpec::custom(std::function<Complex(long)> rule) {
    if (!rule) throw std::invalid_argument("VerblunskySpec::custom: empty rule");
    VerblunskySpec s;
    s.kind_ = Kind::Custom;
    s.rule_ = std::move(rule);
    return s;
}

Complex VerblunskySpec::at(long n) const {
    if (n < -1) throw std::invalid_argument("VerblunskySpec::at: need n >= -1");
    if (n == -1) return Complex(-1.0, 0.0);
    switch (kind_) {
        case Kind::List:
            if (n >= static_cast<long>(cycle_.size()))
                throw std::out_of_range("VerblunskySpec list read past horizon " +
                                        std::to_string(cycle_.size()));
            return cycle_[static_cast<std::size_t>(n)];
        case Kind::Constant:
        case Kind::TwoPeriodic:
        case Kind::Periodic:
            return cycle_[static_cast<std::size_t>(n % static_cast<long>(cycle_.size()))];
        case Kind::CircularJacobi:
            return Complex(circular_jacobi_alpha(n, cj_a_, cj_b_), 0.0);
        case Kind::Custom: {
            const Complex a = rule_(n);
            require_unit_disk(a, n);
            return a;
        }
    }
    throw std::logic_error("VerblunskySpec: bad kind");
}

std::optional<long> VerblunskySpec::horizon() const {
    if (kind_ == Kind::List) return static_cast<long>(cycle_.size());
    return std::nullopt;
}

long VerblunskySpec::period() const {
    switch (kind_) {
        case Kind::Constant: return 1;
        case Kind::TwoPeriodic: return 2;
        case Kind::Periodic: return static_cast<long>(cycle_.size());
        default: throw std::logic_error("VerblunskySpec::period: not a periodic kind");
    }
}

bool VerblunskySpec::is_real() const {
    switch (kind_) {
        case Kind::CircularJacobi: return true;
        case Kind::Custom: return false;
        default:
            for (const Complex& a : cycle_)
                if (a.imag() != 0.0) return false;
            return true;
    }
}

// ---- WalkSpec ----

WalkSpec WalkSpec::from_lists(std::vector<double> p, std::vector<double> q, std::vector<double> r) {
    if (p.empty() || p.size() != q.size() || p.size() != r.size())
        throw std::invalid_argument("WalkSpec::from_lists: need equal nonempty p, q, r");
    for (std::size_t k = 0; k < p.size(); ++k) require_walk_row(p[k], q[k], r[k], static_cast<long>(k));
    WalkSpec w;
    w.kind_ = Kind::Lists;
    w.pl_ = std::move(p);
    w.ql_ = std::move(q);
    w.rl_ = std::move(r);
    return w;
}

WalkSpec WalkSpec::constant(double p0, double p, double q) {
    return periodic(p0, {p}, {q}, {1.0 - p - q});
}

WalkSpec WalkSpec::periodic(double p0, std::vector<double> p_cycle, std::vector<double> q_cycle,
                            std::vector<double> r_cycle) {
    if (p_cycle.empty() || p_cycle.size() != q_cycle.size() || p_cycle.size() != r_cycle.size())
        throw std::invalid_argument("WalkSpec::periodic: need equal nonempty cycles");
    require_walk_row(p0, 0.0, 1.0 - p0, 0);
    for (std::size_t j = 0; j < p_cycle.size(); ++j)
        require_walk_row(p_cycle[j], q_cycle[j], r_cycle[j], static_cast<long>(j + 1));
    WalkSpec w;
    w.kind_ = p_cycle.size() == 1 ? Kind::Constant : Kind::Periodic;
    w.p0_ = p0;
    w.pc_ = std::move(p_cycle);
    w.qc_ = std::move(q_cycle);
    w.rc_ = std::move(r_cycle);
    return w;
}

WalkSpec WalkSpec::jacobi(double a, double b) {
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("WalkSpec::jacobi: need a, b > -1");
    if (!(a == b || b >= std::fabs(a)))
        throw std::domain_error("WalkSpec::jacobi: r_n < 0 unless a = b or b >= |a|");
    WalkSpec w;
    w.kind_ = Kind::Jacobi;
    w.ja_ = a;
    w.jb_ = b;
    return w;
}

void WalkSpec::check(long k) const {
    if (k < 0) throw std::invalid_argument("WalkSpec: need k >= 0");
    if (kind_ == Kind::Lists && k >= static_cast<long>(pl_.size()))
        throw std::out_of_range("WalkSpec list read past horizon " + std::to_string(pl_.size()));
}

double WalkSpec::p(long k) const {
    check(k);
    switch (kind_) {
        case Kind::Lists: return pl_[static_cast<std::size_t>(k)];
        case Kind::Constant:
        case Kind::Periodic:
            return k == 0 ? p0_ : pc_[static_cast<std::size_t>((k - 1) % period())];
        case Kind::Jacobi: return jacobi_row_unchecked(k, ja_, jb_).p;
    }
    throw std::logic_error("WalkSpec: bad kind");
}

double WalkSpec::q(long k) const {
    check(k);
    if (k == 0) return 0.0;
    switch (kind_) {
        case Kind::Lists: return ql_[static_cast<std::size_t>(k)];
        case Kind::Constant:
        case Kind::Periodic: return qc_[static_cast<std::size_t>((k - 1) % period())];
        case Kind::Jacobi: return jacobi_row_unchecked(k, ja_, jb_).q;
    }
    throw std::logic_error("WalkSpec: bad kind");
}

double WalkSpec::r(long k) const {
    check(k);
    switch (kind_) {
        case Kind::Lists: return rl_[static_cast<std::size_t>(k)];
        case Kind::Constant:
        case Kind::Periodic:
            return k == 0 ? 1.0 - p0_ : rc_[static_cast<std::size_t>((k - 1) % period())];
        case Kind::Jacobi: {
            const auto row = jacobi_row_unchecked(k, ja_, jb_);
            if (!row.walk_valid)
                throw std::domain_error("WalkSpec::jacobi: r_" + std::to_string(k) + " < 0");
            return row.r;
        }
    }
    throw std::logic_error("WalkSpec: bad kind");
}

std::optional<long> WalkSpec::horizon() const {
    if (kind_ == Kind::Lists) return static_cast<long>(pl_.size());
    return std::nullopt;
}

} // namespace qwalk
