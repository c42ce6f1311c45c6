#pragma once

#include <string>
#include <vector>

#include "qwalk/coeffs.hpp"
#include "qwalk/measures.hpp"

namespace qwalk {

enum class Provenance { Spectral, Naive };

/// One walk <-> alpha correspondence: real Verblunsky list, the matching
/// transition probabilities, and the Jacobi offdiagonal s_k.
struct CorrespondenceRecord {
    std::vector<double> alphas;
    std::vector<double> p, q, r;
    std::vector<double> s;
    Provenance provenance = Provenance::Spectral;
};

/// Geronimus relations, alpha -> walk:
///   q_k = (1+a_{2k-2})(1+a_{2k-1})/2,
///   r_k = (a_2k (1-a_{2k-1}) - a_{2k-2}(1+a_{2k-1}))/2,
///   p_k = (1-a_{2k-1})(1-a_2k)/2,  with a_{-1} = -1.
/// Rejects non-real or out-of-range alphas and negative r_k.
WalkSpec alphas_to_walk(const std::vector<double>& alphas);

/// Inverse recursion: a_0 = r_0, then a_{2k-1} from q_k and a_{2k} from p_k.
/// Reports the index at which a walk fails to be spectrally quantizable.
std::vector<double> walk_to_alphas(const WalkSpec& walk, long n_alphas);

/// s_k = sqrt(p_k q_{k+1}) = sqrt((1-a_{2k-1})(1-a_2k^2)(1+a_{2k+1}))/2.
double offdiag_from_alphas(const std::vector<double>& alphas, long k);

CorrespondenceRecord correspondence_from_alphas(const std::vector<double>& alphas);
CorrespondenceRecord correspondence_from_walk(const WalkSpec& walk, long n_alphas);

/// Szego map of measures: u(x) = w(arccos x) / (pi sqrt(1-x^2)). Interior
/// point masses at +-theta merge into cos(theta) with their sum; masses at
/// theta = 0, pi map to x = +-1 scaled by boundary_mass_factor.
SegmentMeasure szego_measure_forward(const CircleMeasure& circle, double boundary_mass_factor = 1.0);

/// Inverse direction on weights: w(theta) = pi |sin theta| u(cos theta).
CircleMeasure szego_measure_backward(const SegmentMeasure& segment);

/// Orthonormal segment polynomial from the circle polynomials:
/// p_k(x) = (z^-k phi_2k(z) + z^k phi_2k(z^-1)) / sqrt(2(1-a_{2k-1})),
/// z = e^{i arccos x}. Requires a real spec.
double segment_polys_from_circle(const VerblunskySpec& spec, long k, double x);

/// Coin-eigenvector transition probabilities read from the LM splitting:
///   q_k = (1+a_{2k-1})(1-a_{2k-2}^2)/2,
///   p_k = (1-a_{2k-1})(1-a_2k^2)/2,
///   r_k = (a_{2k-2}^2 (1+a_{2k-1}) + a_2k^2 (1-a_{2k-1}))/2.
/// Coincides with alphas_to_walk only when all even alphas vanish.
WalkSpec naive_quantization(const std::vector<double>& alphas);

struct RestrictionReport {
    double max_tridiagonal_residual = 0.0; // (C+C^t)/2 acting on the c+ family
    double max_eigenvector_residual = 0.0; // M c_pm = +- c_pm
    long worst_k = -1;
    bool ok = false;
};

/// Verifies that (C+C^t)/2 acts tridiagonally on the M-eigenvector family
/// c_k^+ with coefficients r_k and s_k.
RestrictionReport restriction_identity_check(const std::vector<double>& alphas, long n, double tol = 1e-10);

} // namespace qwalk
