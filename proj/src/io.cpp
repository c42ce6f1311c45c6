#include "qwalk/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qwalk {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json complex_list_to_json(const std::vector<Complex>& v) {
    json arr = json::array();
    for (const Complex& c : v) arr.push_back(complex_to_json(c));
    return arr;
}

std::vector<Complex> complex_list_from_json(const json& j) {
    std::vector<Complex> out;
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

} // namespace

json spec_to_json(const VerblunskySpec& spec) {
    json j;
    switch (spec.kind()) {
        case VerblunskySpec::Kind::List:
            j["kind"] = "list";
            j["values"] = complex_list_to_json(spec.cycle());
            break;
        case VerblunskySpec::Kind::Constant:
            j["kind"] = "constant";
            j["a"] = complex_to_json(spec.cycle()[0]);
            break;
        case VerblunskySpec::Kind::TwoPeriodic:
            j["kind"] = "two_periodic";
            j["a"] = complex_to_json(spec.cycle()[0]);
            j["b"] = complex_to_json(spec.cycle()[1]);
            break;
        case VerblunskySpec::Kind::Periodic:
            j["kind"] = "periodic";
            j["values"] = complex_list_to_json(spec.cycle());
            break;
        case VerblunskySpec::Kind::CircularJacobi:
            j["kind"] = "circular_jacobi";
            j["alpha"] = spec.jacobi_params().first;
            j["beta"] = spec.jacobi_params().second;
            break;
        case VerblunskySpec::Kind::Custom:
            throw std::invalid_argument("spec_to_json: custom rules are not serializable");
    }
    return j;
}

VerblunskySpec spec_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "list") return VerblunskySpec::from_list(complex_list_from_json(j.at("values")));
    if (kind == "constant") return VerblunskySpec::constant(complex_from_json(j.at("a")));
    if (kind == "two_periodic")
        return VerblunskySpec::two_periodic(complex_from_json(j.at("a")), complex_from_json(j.at("b")));
    if (kind == "periodic") return VerblunskySpec::periodic(complex_list_from_json(j.at("values")));
    if (kind == "circular_jacobi")
        return VerblunskySpec::circular_jacobi(j.at("alpha").get<double>(), j.at("beta").get<double>());
    throw std::invalid_argument("spec_from_json: unknown kind '" + kind + "'");
}

json walk_to_json(const WalkSpec& walk, long rows) {
    json j;
    j["kind"] = "walk";
    if (walk.kind() == WalkSpec::Kind::Constant) {
        j["p0"] = walk.p(0);
        j["p"] = walk.p(1);
        j["q"] = walk.q(1);
        return j;
    }
    json p = json::array(), q = json::array(), r = json::array();
    for (long k = 0; k < rows; ++k) {
        p.push_back(walk.p(k));
        q.push_back(walk.q(k));
        r.push_back(walk.r(k));
    }
    j["p"] = p;
    j["q"] = q;
    j["r"] = r;
    return j;
}

WalkSpec walk_from_json(const json& j) {
    if (j.contains("p0") && j.at("p").is_number())
        return WalkSpec::constant(j.at("p0").get<double>(), j.at("p").get<double>(), j.at("q").get<double>());
    return WalkSpec::from_lists(j.at("p").get<std::vector<double>>(), j.at("q").get<std::vector<double>>(),
                                j.at("r").get<std::vector<double>>());
}

CoeffInput coeff_input_from_json(const json& j) {
    CoeffInput in;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "walk") {
        in.is_walk = true;
        in.walk = walk_from_json(j);
    } else {
        in.spec = spec_from_json(j);
    }
    return in;
}

json correspondence_to_json(const CorrespondenceRecord& rec) {
    json j;
    j["alphas"] = rec.alphas;
    j["walk"] = {{"p", rec.p}, {"q", rec.q}, {"r", rec.r}};
    j["s"] = rec.s;
    j["provenance"] = rec.provenance == Provenance::Spectral ? "spectral" : "naive";
    return j;
}

CorrespondenceRecord correspondence_from_json(const json& j) {
    CorrespondenceRecord rec;
    rec.alphas = j.at("alphas").get<std::vector<double>>();
    rec.p = j.at("walk").at("p").get<std::vector<double>>();
    rec.q = j.at("walk").at("q").get<std::vector<double>>();
    rec.r = j.at("walk").at("r").get<std::vector<double>>();
    rec.s = j.at("s").get<std::vector<double>>();
    rec.provenance =
        j.value("provenance", "spectral") == std::string("naive") ? Provenance::Naive : Provenance::Spectral;
    return rec;
}

json lifting_report_to_json(const LiftingReport& rep) {
    json pairs = json::array();
    for (long i = 0; i < rep.d_eigenvalues.size(); ++i) {
        const double lam = rep.d_eigenvalues(i);
        const double s = std::sqrt(std::max(0.0, 1.0 - lam * lam));
        json entry{{"lambda", lam}, {"mu_plus", {lam, s}}, {"mu_minus", {lam, -s}}};
        if (i < static_cast<long>(rep.pair_residuals.size()))
            entry["residual"] = rep.pair_residuals[static_cast<std::size_t>(i)];
        pairs.push_back(entry);
    }
    return json{{"pairs", pairs},
                {"lifted_count", rep.lifted_count},
                {"residual_count", rep.residual_count},
                {"max_vector_residual", rep.max_vector_residual},
                {"max_phase_mismatch", rep.max_phase_mismatch},
                {"max_residual_unit_gap", rep.max_residual_unit_gap},
                {"ok", rep.ok}};
}

void write_circle_measure_csv(std::ostream& os, const std::vector<double>& theta,
                              const std::vector<double>& weight, const std::vector<PointMass>& masses) {
    os << "theta,weight\n";
    for (std::size_t i = 0; i < theta.size(); ++i)
        os << format_double(theta[i]) << ',' << format_double(weight[i]) << '\n';
    for (const PointMass& pm : masses)
        os << "# point_mass, " << format_double(pm.position) << ", " << format_double(pm.mass) << '\n';
}

void write_segment_measure_csv(std::ostream& os, const std::vector<double>& x, const std::vector<double>& u,
                               const std::vector<PointMass>& masses) {
    os << "x,u\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        os << format_double(x[i]) << ',' << format_double(u[i]) << '\n';
    for (const PointMass& pm : masses)
        os << "# point_mass, " << format_double(pm.position) << ", " << format_double(pm.mass) << '\n';
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& m) {
    os << "row,col,re,im\n";
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            os << i << ',' << j << ',' << format_double(m(i, j).real()) << ','
               << format_double(m(i, j).imag()) << '\n';
}

void write_eigenvalues_csv(std::ostream& os, const Eigen::VectorXcd& v) {
    os << "re,im,arg\n";
    for (long i = 0; i < v.size(); ++i)
        os << format_double(v(i).real()) << ',' << format_double(v(i).imag()) << ','
           << format_double(std::arg(v(i))) << '\n';
}

void write_probability_table_csv(std::ostream& os, const std::vector<ProbabilityRow>& rows) {
    os << "i,j,n,P_matrix,P_spectral,abs_diff\n";
    for (const ProbabilityRow& r : rows)
        os << r.i << ',' << r.j << ',' << r.n << ',' << format_double(r.p_matrix) << ','
           << format_double(r.p_spectral) << ',' << format_double(std::fabs(r.p_matrix - r.p_spectral))
           << '\n';
}

} // namespace qwalk
