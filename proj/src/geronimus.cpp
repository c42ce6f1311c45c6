#include "qwalk/geronimus.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "qwalk/cmv.hpp"
#include "qwalk/opuc.hpp"

namespace qwalk {

namespace {

double alpha_at(const std::vector<double>& a, long j) {
    if (j == -1) return -1.0;
    if (j < 0 || j >= static_cast<long>(a.size()))
        throw std::out_of_range("alpha index " + std::to_string(j) + " out of range");
    return a[static_cast<std::size_t>(j)];
}

void require_real_interior(const std::vector<double>& a) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!(std::fabs(a[j]) < 1.0))
            throw std::invalid_argument("alpha_" + std::to_string(j) + " not inside (-1,1)");
}

} // namespace

WalkSpec alphas_to_walk(const std::vector<double>& alphas) {
    if (alphas.empty()) throw std::invalid_argument("alphas_to_walk: empty list");
    require_real_interior(alphas);
    const long rows = (static_cast<long>(alphas.size()) + 1) / 2; // rows with alpha_2k available
    std::vector<double> p, q, r;
    for (long k = 0; k < rows; ++k) {
        // at k = 0 the alpha_{-2} terms carry the factor 1 + alpha_{-1} = 0
        const double am2 = (k == 0) ? 0.0 : alpha_at(alphas, 2 * k - 2);
        const double am1 = alpha_at(alphas, 2 * k - 1);
        const double a0 = alpha_at(alphas, 2 * k);
        const double qk = (k == 0) ? 0.0 : 0.5 * (1.0 + am2) * (1.0 + am1);
        const double rk = 0.5 * (a0 * (1.0 - am1) - am2 * (1.0 + am1));
        const double pk = 0.5 * (1.0 - am1) * (1.0 - a0);
        if (rk < 0.0)
            throw std::domain_error("alphas_to_walk: r_" + std::to_string(k) + " = " + std::to_string(rk) +
                                    " < 0, the alpha sequence does not come from a random walk");
        q.push_back(qk);
        r.push_back(rk);
        p.push_back(pk);
    }
    return WalkSpec::from_lists(std::move(p), std::move(q), std::move(r));
}

std::vector<double> walk_to_alphas(const WalkSpec& walk, long n_alphas) {
    if (n_alphas < 1) throw std::invalid_argument("walk_to_alphas: need n_alphas >= 1");
    std::vector<double> a;
    a.reserve(static_cast<std::size_t>(n_alphas));
    a.push_back(walk.r(0)); // r_0 = alpha_0
    if (!(std::fabs(a[0]) < 1.0))
        throw std::domain_error("walk_to_alphas: not quantizable at index 0 (alpha_0 = r_0 = 1)");
    for (long j = 1; j < n_alphas; ++j) {
        double v;
        if (j % 2 == 1) {
            const long k = (j + 1) / 2;
            const double prev = a[static_cast<std::size_t>(j - 1)]; // alpha_{2k-2}
            if (std::fabs(1.0 + prev) < 1e-13)
                throw std::domain_error("walk_to_alphas: division by 1 + alpha_" + std::to_string(j - 2) +
                                        " below 1e-13");
            v = 2.0 * walk.q(k) / (1.0 + prev) - 1.0;
        } else {
            const long k = j / 2;
            const double prev = a[static_cast<std::size_t>(j - 1)]; // alpha_{2k-1}
            if (std::fabs(1.0 - prev) < 1e-13)
                throw std::domain_error("walk_to_alphas: division by 1 - alpha_" + std::to_string(j - 1) +
                                        " below 1e-13");
            v = 1.0 - 2.0 * walk.p(k) / (1.0 - prev);
        }
        if (!(std::fabs(v) < 1.0))
            throw std::domain_error("walk_to_alphas: the walk is not spectrally quantizable at index " +
                                    std::to_string(j) + " (alpha = " + std::to_string(v) + ")");
        a.push_back(v);
    }
    return a;
}

double offdiag_from_alphas(const std::vector<double>& alphas, long k) {
    if (k < 0) throw std::invalid_argument("offdiag_from_alphas: need k >= 0");
    const double am1 = alpha_at(alphas, 2 * k - 1);
    const double a0 = alpha_at(alphas, 2 * k);
    const double a1 = alpha_at(alphas, 2 * k + 1);
    return 0.5 * std::sqrt((1.0 - am1) * (1.0 - a0 * a0) * (1.0 + a1));
}

CorrespondenceRecord correspondence_from_alphas(const std::vector<double>& alphas) {
    CorrespondenceRecord rec;
    rec.alphas = alphas;
    rec.provenance = Provenance::Spectral;
    const WalkSpec w = alphas_to_walk(alphas);
    const long rows = (static_cast<long>(alphas.size()) + 1) / 2;
    for (long k = 0; k < rows; ++k) {
        rec.p.push_back(w.p(k));
        rec.q.push_back(w.q(k));
        rec.r.push_back(w.r(k));
    }
    for (long k = 0; 2 * k + 1 < static_cast<long>(alphas.size()); ++k)
        rec.s.push_back(offdiag_from_alphas(alphas, k));
    return rec;
}

CorrespondenceRecord correspondence_from_walk(const WalkSpec& walk, long n_alphas) {
    CorrespondenceRecord rec = correspondence_from_alphas(walk_to_alphas(walk, n_alphas));
    return rec;
}

SegmentMeasure szego_measure_forward(const CircleMeasure& circle, double boundary_mass_factor) {
    // symmetry under theta -> -theta, sampled
    for (int i = 1; i < 128; ++i) {
        const double t = M_PI * i / 128.0;
        const double w1 = circle.weight(t), w2 = circle.weight(2.0 * M_PI - t);
        if (std::fabs(w1 - w2) > 1e-8 * std::max(1.0, std::fabs(w1)))
            throw std::invalid_argument("szego_measure_forward: circle measure not conjugation-symmetric");
    }
    SegmentMeasure seg;
    auto w = circle.weight;
    seg.weight = [w](double x) {
        if (std::fabs(x) >= 1.0) return 0.0;
        return w(std::acos(x)) / (M_PI * std::sqrt(1.0 - x * x));
    };
    // support: bands inside (0, pi) map to [cos(hi), cos(lo)]
    double lo = -1.0, hi = 1.0;
    if (!circle.bands.empty()) {
        lo = 1.0;
        hi = -1.0;
        for (const auto& [a, b] : circle.bands) {
            if (a >= M_PI - 1e-14) continue; // conjugate copy of a (0,pi) band
            lo = std::min(lo, std::cos(std::min(b, M_PI)));
            hi = std::max(hi, std::cos(a));
        }
        seg.band_lo = lo;
        seg.band_hi = hi;
    }
    // point masses: +-theta pairs merge, boundary masses pass with the factor
    std::vector<bool> visited(circle.point_masses.size(), false);
    for (std::size_t i = 0; i < circle.point_masses.size(); ++i) {
        if (visited[i]) continue;
        double theta = std::fmod(circle.point_masses[i].position, 2.0 * M_PI);
        if (theta < 0) theta += 2.0 * M_PI;
        const double m = circle.point_masses[i].mass;
        if (theta < 1e-9 || theta > 2.0 * M_PI - 1e-9) {
            seg.point_masses.push_back({1.0, boundary_mass_factor * m});
            continue;
        }
        if (std::fabs(theta - M_PI) < 1e-9) {
            seg.point_masses.push_back({-1.0, boundary_mass_factor * m});
            continue;
        }
        bool merged = false;
        for (std::size_t j = i + 1; j < circle.point_masses.size(); ++j) {
            if (visited[j]) continue;
            double tj = std::fmod(circle.point_masses[j].position, 2.0 * M_PI);
            if (tj < 0) tj += 2.0 * M_PI;
            if (std::fabs(tj - (2.0 * M_PI - theta)) < 1e-9) {
                if (std::fabs(circle.point_masses[j].mass - m) > 1e-8)
                    throw std::invalid_argument("szego_measure_forward: asymmetric point masses");
                seg.point_masses.push_back({std::cos(theta), m + circle.point_masses[j].mass});
                visited[j] = true;
                merged = true;
                break;
            }
        }
        if (!merged)
            throw std::invalid_argument("szego_measure_forward: interior point mass without conjugate partner");
    }
    return seg;
}

CircleMeasure szego_measure_backward(const SegmentMeasure& segment) {
    CircleMeasure circ;
    auto u = segment.weight;
    circ.weight = [u](double theta) { return M_PI * std::fabs(std::sin(theta)) * u(std::cos(theta)); };
    const double t_lo = std::acos(segment.band_hi), t_hi = std::acos(segment.band_lo);
    circ.bands = {{t_lo, t_hi}, {2.0 * M_PI - t_hi, 2.0 * M_PI - t_lo}};
    for (const auto& pm : segment.point_masses) {
        if (pm.position >= 1.0 - 1e-14) {
            circ.point_masses.push_back({0.0, pm.mass});
        } else if (pm.position <= -1.0 + 1e-14) {
            circ.point_masses.push_back({M_PI, pm.mass});
        } else {
            const double t = std::acos(pm.position);
            circ.point_masses.push_back({t, 0.5 * pm.mass});
            circ.point_masses.push_back({2.0 * M_PI - t, 0.5 * pm.mass});
        }
    }
    return circ;
}

double segment_polys_from_circle(const VerblunskySpec& spec, long k, double x) {
    if (!spec.is_real()) throw std::invalid_argument("segment_polys_from_circle: spec must be real");
    if (k < 0) throw std::invalid_argument("segment_polys_from_circle: need k >= 0");
    if (std::fabs(x) > 1.0) throw std::invalid_argument("segment_polys_from_circle: need |x| <= 1");
    const Complex z = std::polar(1.0, std::acos(x));
    const Complex zb = std::conj(z);
    const Complex phi_z = szego_eval_at(spec, 2 * k, z).first;
    const Complex phi_zb = szego_eval_at(spec, 2 * k, zb).first;
    Complex zk = 1.0, zkb = 1.0;
    for (long j = 0; j < k; ++j) {
        zk *= zb; // z^{-k}
        zkb *= z; // z^{+k}
    }
    const double am1 = (k == 0) ? -1.0 : spec.at(2 * k - 1).real();
    const Complex val = (zk * phi_z + zkb * phi_zb) / std::sqrt(2.0 * (1.0 - am1));
    return val.real();
}

WalkSpec naive_quantization(const std::vector<double>& alphas) {
    if (alphas.empty()) throw std::invalid_argument("naive_quantization: empty list");
    require_real_interior(alphas);
    const long rows = (static_cast<long>(alphas.size()) + 1) / 2;
    std::vector<double> p, q, r;
    for (long k = 0; k < rows; ++k) {
        const double am2 = (k == 0) ? 0.0 : alpha_at(alphas, 2 * k - 2); // killed by 1+a_{-1} at k=0
        const double am1 = alpha_at(alphas, 2 * k - 1);
        const double a0 = alpha_at(alphas, 2 * k);
        const double qk = (k == 0) ? 0.0 : 0.5 * (1.0 + am1) * (1.0 - am2 * am2);
        const double pk = 0.5 * (1.0 - am1) * (1.0 - a0 * a0);
        const double rk = 0.5 * (am2 * am2 * (1.0 + am1) + a0 * a0 * (1.0 - am1));
        q.push_back(qk);
        p.push_back(pk);
        r.push_back(rk);
    }
    return WalkSpec::from_lists(std::move(p), std::move(q), std::move(r));
}

RestrictionReport restriction_identity_check(const std::vector<double>& alphas, long n, double tol) {
    if (n < 6) throw std::invalid_argument("restriction_identity_check: need n >= 6");
    const long N = 2 * n + 2;
    if (static_cast<long>(alphas.size()) < N)
        throw std::invalid_argument("restriction_identity_check: need at least 2n+2 coefficients");
    require_real_interior(alphas);
    std::vector<Complex> ac(alphas.begin(), alphas.end());
    const CmvOperator op = build_cmv(VerblunskySpec::from_list(ac), N);
    const Eigen::MatrixXd C = op.dense.real();
    const Eigen::MatrixXd M = op.M.real();
    const Eigen::MatrixXd A = 0.5 * (C + C.transpose());

    auto unit = [N](long i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
        e(i) = 1.0;
        return e;
    };
    auto c_plus = [&](long k) -> Eigen::VectorXd {
        if (k == 0) return unit(0);
        const double am1 = alpha_at(alphas, 2 * k - 1);
        return std::sqrt(0.5 * (1.0 + am1)) * unit(2 * k - 1) + std::sqrt(0.5 * (1.0 - am1)) * unit(2 * k);
    };
    auto c_minus = [&](long k) -> Eigen::VectorXd {
        const double am1 = alpha_at(alphas, 2 * k - 1);
        return std::sqrt(0.5 * (1.0 - am1)) * unit(2 * k - 1) - std::sqrt(0.5 * (1.0 + am1)) * unit(2 * k);
    };

    RestrictionReport rep;
    for (long k = 0; k < n; ++k) {
        const Eigen::VectorXd cp = c_plus(k);
        rep.max_eigenvector_residual = std::max(rep.max_eigenvector_residual, (M * cp - cp).norm());
        if (k >= 1) {
            const Eigen::VectorXd cm = c_minus(k);
            rep.max_eigenvector_residual = std::max(rep.max_eigenvector_residual, (M * cm + cm).norm());
        }
    }
    for (long k = 0; k + 1 < n; ++k) {
        const double am2 = (k == 0) ? 0.0 : alpha_at(alphas, 2 * k - 2); // factor 1+alpha_{-1} = 0
        const double rk = 0.5 * (alpha_at(alphas, 2 * k) * (1.0 - alpha_at(alphas, 2 * k - 1)) -
                                 am2 * (1.0 + alpha_at(alphas, 2 * k - 1)));
        Eigen::VectorXd rhs = rk * c_plus(k) + offdiag_from_alphas(alphas, k) * c_plus(k + 1);
        if (k >= 1) rhs += offdiag_from_alphas(alphas, k - 1) * c_plus(k - 1);
        const double resid = (A * c_plus(k) - rhs).norm();
        if (resid > rep.max_tridiagonal_residual) {
            rep.max_tridiagonal_residual = resid;
            rep.worst_k = k;
        }
    }
    rep.ok = rep.max_tridiagonal_residual < tol && rep.max_eigenvector_residual < 1e-12;
    return rep;
}

} // namespace qwalk
