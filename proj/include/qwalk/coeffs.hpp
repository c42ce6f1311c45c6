#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

/// Verblunsky coefficients of the circular Jacobi weight
/// (1-cos t)^(a+1/2) (1+cos t)^(b+1/2); real, inside (-1,1) for a,b > -1.
double circular_jacobi_alpha(long n, double a, double b);

struct JacobiWalkRow {
    double p, r, q;
    bool walk_valid; // false when r < 0 (the formulas still apply)
};

/// Transition coefficients of the normalized Jacobi polynomial recurrence.
/// Computed for any a,b > -1; walk_valid flags rows with r < 0.
JacobiWalkRow jacobi_walk_coeffs(long n, double a, double b);

/// P_n^{(a,b)}(x) by the three-term recurrence, P_{-1} = 0, P_0 = 1.
double jacobi_poly_eval(long n, double a, double b, double x);

/// Rule producing one Verblunsky coefficient per index n >= 0, all strictly
/// inside the unit disk. The sentinel alpha_{-1} = -1 is implied: at(-1)
/// returns -1 and the value is never stored.
class VerblunskySpec {
public:
    enum class Kind { List, Constant, TwoPeriodic, Periodic, CircularJacobi, Custom };

    static VerblunskySpec constant(Complex a);
    static VerblunskySpec two_periodic(Complex a, Complex b);
    static VerblunskySpec periodic(std::vector<Complex> cycle);
    /// Explicit list with a finite horizon; reads past it are errors.
    static VerblunskySpec from_list(std::vector<Complex> values);
    static VerblunskySpec circular_jacobi(double a, double b);
    /// Arbitrary rule; |alpha_n| < 1 is checked per access.
    static VerblunskySpec custom(std::function<Complex(long)> rule);

    Complex at(long n) const;

    Kind kind() const { return kind_; }
    const std::vector<Complex>& cycle() const { return cycle_; }
    std::pair<double, double> jacobi_params() const { return {cj_a_, cj_b_}; }
    std::optional<long> horizon() const;
    /// Cycle length for Constant/TwoPeriodic/Periodic kinds.
    long period() const;

    /// True when every coefficient is real (exact for closed-form kinds).
    bool is_real() const;

private:
    VerblunskySpec() = default;
    Kind kind_ = Kind::Constant;
    std::vector<Complex> cycle_;
    double cj_a_ = 0.0, cj_b_ = 0.0;
    std::function<Complex(long)> rule_;
};

inline Complex verblunsky_at(const VerblunskySpec& spec, long n) { return spec.at(n); }

/// Transition probabilities (p_k, q_k, r_k) of a half-line birth-death chain:
/// p_0 + r_0 = 1, q_0 = 0, and p_k + q_k + r_k = 1 with p_k > 0, q_k > 0 for
/// k >= 1, r_k >= 0.
class WalkSpec {
public:
    enum class Kind { Lists, Constant, Periodic, Jacobi };

    static WalkSpec from_lists(std::vector<double> p, std::vector<double> q, std::vector<double> r);
    /// Constant walk: p_0 given, then p_k = p, q_k = q, r_k = 1-p-q for k >= 1.
    static WalkSpec constant(double p0, double p, double q);
    /// Boundary row (p0, r0 = 1-p0), then (p,q,r) cycling with period L from k = 1.
    static WalkSpec periodic(double p0, std::vector<double> p_cycle, std::vector<double> q_cycle,
                             std::vector<double> r_cycle);
    static WalkSpec jacobi(double a, double b);

    double p(long k) const;
    double q(long k) const;
    double r(long k) const;

    Kind kind() const { return kind_; }
    std::optional<long> horizon() const; // Lists: number of stored rows
    long period() const { return static_cast<long>(pc_.size()); }
    std::pair<double, double> jacobi_params() const { return {ja_, jb_}; }

private:
    WalkSpec() = default;
    void check(long k) const;
    Kind kind_ = Kind::Constant;
    std::vector<double> pl_, ql_, rl_;  // Lists
    double p0_ = 1.0;                   // Constant/Periodic boundary
    std::vector<double> pc_, qc_, rc_;  // Periodic cycle (Constant: length 1)
    double ja_ = 0.0, jb_ = 0.0;        // Jacobi
};

} // namespace qwalk
