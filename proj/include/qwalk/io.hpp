#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/coeffs.hpp"
#include "qwalk/geronimus.hpp"
#include "qwalk/measures.hpp"
#include "qwalk/szegedy.hpp"

namespace qwalk {

using nlohmann::json;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

// ---- JSON coefficient specs ----
// {"kind":"constant","a":[re,im]}, {"kind":"two_periodic","a":..,"b":..},
// {"kind":"periodic"|"list","values":[[re,im],...]},
// {"kind":"circular_jacobi","alpha":x,"beta":y},
// {"kind":"walk","p0":x,"p":y,"q":z} or {"kind":"walk","p":[..],"q":[..],"r":[..]}.

json spec_to_json(const VerblunskySpec& spec);
VerblunskySpec spec_from_json(const json& j);

json walk_to_json(const WalkSpec& walk, long rows);
WalkSpec walk_from_json(const json& j);

/// Either side of the correspondence, as tagged JSON.
struct CoeffInput {
    bool is_walk = false;
    VerblunskySpec spec = VerblunskySpec::constant(0.0);
    WalkSpec walk = WalkSpec::constant(1.0, 0.5, 0.5);
};
CoeffInput coeff_input_from_json(const json& j);

json correspondence_to_json(const CorrespondenceRecord& rec);
CorrespondenceRecord correspondence_from_json(const json& j);

json lifting_report_to_json(const LiftingReport& rep);

// ---- CSV ----
void write_circle_measure_csv(std::ostream& os, const std::vector<double>& theta,
                              const std::vector<double>& weight, const std::vector<PointMass>& masses);
void write_segment_measure_csv(std::ostream& os, const std::vector<double>& x,
                               const std::vector<double>& u, const std::vector<PointMass>& masses);
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& m);
void write_eigenvalues_csv(std::ostream& os, const Eigen::VectorXcd& v);

struct ProbabilityRow {
    long i, j, n;
    double p_matrix;
    double p_spectral;
};
void write_probability_table_csv(std::ostream& os, const std::vector<ProbabilityRow>& rows);

} // namespace qwalk
