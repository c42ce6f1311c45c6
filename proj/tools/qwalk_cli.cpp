#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/geronimus.hpp"
#include "qwalk/io.hpp"
#include "qwalk/km_walk.hpp"
#include "qwalk/opuc.hpp"
#include "qwalk/periodic.hpp"
#include "qwalk/szegedy.hpp"
#include "qwalk/verify.hpp"

namespace {

using namespace qwalk;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNonConvergence = 3;

struct CommonOpts {
    std::string walk_json;
    std::string alphas_json;
    std::vector<double> jacobi;       // A B
    std::vector<double> two_periodic; // a_re a_im b_re b_im
    std::string spec_json;
    long n = 20;
    long grid = 512;
    double tol = 1e-8;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_grid) {
    cmd->add_option("--walk", o.walk_json, "walk as JSON, e.g. '{\"p0\":0.5,\"p\":0.375,\"q\":0.375}'");
    cmd->add_option("--alphas", o.alphas_json, "real Verblunsky coefficients as a JSON array");
    cmd->add_option("--jacobi", o.jacobi, "circular-Jacobi parameters A B")->expected(2);
    cmd->add_option("--two-periodic", o.two_periodic, "two-periodic coefficients a_re a_im b_re b_im")
        ->expected(4);
    cmd->add_option("--spec", o.spec_json, "coefficient spec as JSON (see README)");
    cmd->add_option("--n", o.n, "number of coefficients");
    if (with_grid) cmd->add_option("--grid", o.grid, "number of grid points");
    cmd->add_option("--tol", o.tol, "tolerance for stability checks");
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::invalid_argument("cannot open output path " + o.out);
    f << text;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

void validate(const CommonOpts& o) {
    if (o.grid < 2) throw std::invalid_argument("--grid must be at least 2");
    if (!(o.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (o.n < 1) throw std::invalid_argument("--n must be at least 1");
}

WalkSpec walk_from_opts(const CommonOpts& o) {
    json j = parse_json(o.walk_json);
    if (!j.contains("kind")) j["kind"] = "walk";
    return walk_from_json(j);
}

// quantize: emit the walk <-> alpha correspondence document
int cmd_quantize(const CommonOpts& o) {
    CorrespondenceRecord rec;
    if (!o.walk_json.empty()) {
        rec = correspondence_from_walk(walk_from_opts(o), o.n);
    } else if (!o.alphas_json.empty()) {
        rec = correspondence_from_alphas(parse_json(o.alphas_json).get<std::vector<double>>());
    } else if (o.jacobi.size() == 2) {
        std::vector<double> alphas;
        for (long m = 0; m < o.n; ++m) alphas.push_back(circular_jacobi_alpha(m, o.jacobi[0], o.jacobi[1]));
        rec = correspondence_from_alphas(alphas);
    } else if (o.two_periodic.size() == 4) {
        if (o.two_periodic[1] != 0.0 || o.two_periodic[3] != 0.0)
            throw std::domain_error("quantize: the Geronimus correspondence needs real coefficients");
        std::vector<double> alphas;
        for (long m = 0; m < o.n; ++m)
            alphas.push_back(m % 2 == 0 ? o.two_periodic[0] : o.two_periodic[2]);
        rec = correspondence_from_alphas(alphas);
    } else {
        throw std::invalid_argument("quantize: provide --walk, --alphas, --jacobi or --two-periodic");
    }
    emit(o, correspondence_to_json(rec).dump(2) + "\n");
    return kExitOk;
}

// spectrum: emit measure samples, point masses and construction data
int cmd_spectrum(const CommonOpts& o) {
    std::ostringstream os;
    if (!o.walk_json.empty()) {
        const WalkSpec walk = walk_from_opts(o);
        if (walk.kind() == WalkSpec::Kind::Lists) {
            // finite horizon: the measure is exactly the truncation's atoms
            os << "# notice, finite-horizon walk; emitting the exact truncation atoms\n";
            const SegmentMeasure nu = finite_walk_measure(walk, *walk.horizon());
            if (o.format == "json") {
                json masses = json::array();
                for (const auto& pm : nu.point_masses) masses.push_back({pm.position, pm.mass});
                os.str("");
                os << json{{"point_masses", masses}}.dump(2) << "\n";
            } else {
                write_segment_measure_csv(os, {}, {}, nu.point_masses);
            }
            emit(o, os.str());
            return kExitOk;
        }
        if (walk.kind() != WalkSpec::Kind::Constant) {
            // no closed form for this family: boundary limits of S(x + i eps)
            os << "# notice, no closed form for this walk family, using boundary limits\n";
            std::vector<double> x(o.grid);
            for (long g = 0; g < o.grid; ++g) x[g] = -1.0 + 2.0 * (g + 0.5) / o.grid;
            x.push_back(1.0);
            x.insert(x.begin(), -1.0);
            BoundaryLimitOptions opts;
            opts.stab_tol = o.tol;
            opts.max_depth = 200000;
            opts.threads = 4;
            const SegmentRadialMeasure rm = measure_from_stieltjes(walk, x, opts);
            if (o.format == "json") {
                json masses = json::array();
                for (const auto& pm : rm.masses) masses.push_back({pm.position, pm.mass});
                os.str("");
                os << json{{"x", rm.x}, {"u", rm.u}, {"point_masses", masses},
                           {"unstable_indices", rm.unstable}}
                          .dump(2)
                   << "\n";
            } else {
                write_segment_measure_csv(os, rm.x, rm.u, rm.masses);
                for (const std::size_t i : rm.unstable)
                    os << "# unstable, " << format_double(rm.x[i]) << "\n";
            }
            emit(o, os.str());
            return kExitOk;
        }
        const ConstantWalkMeasure cm = constant_walk_measure(walk.p(0), walk.p(1), walk.q(1));
        std::vector<double> x(o.grid), u(o.grid);
        for (long g = 0; g < o.grid; ++g) {
            x[g] = cm.sigma_minus + (cm.sigma_plus - cm.sigma_minus) * (g + 0.5) / o.grid;
            u[g] = cm.measure.weight(x[g]);
        }
        if (o.format == "json") {
            json j{{"x", x}, {"u", u}, {"sigma_minus", cm.sigma_minus}, {"sigma_plus", cm.sigma_plus}};
            if (cm.xi_defined) j["xi"] = cm.xi;
            json masses = json::array();
            for (const auto& pm : cm.measure.point_masses) masses.push_back({pm.position, pm.mass});
            j["point_masses"] = masses;
            os << j.dump(2) << "\n";
        } else {
            write_segment_measure_csv(os, x, u, cm.measure.point_masses);
            if (!cm.xi_defined) os << "# notice, xi branch disabled (p0 = p)\n";
        }
        emit(o, os.str());
        return kExitOk;
    }

    std::optional<std::pair<Complex, Complex>> two_periodic_ab;
    if (o.two_periodic.size() == 4)
        two_periodic_ab = {{Complex(o.two_periodic[0], o.two_periodic[1])},
                           {Complex(o.two_periodic[2], o.two_periodic[3])}};
    if (!o.spec_json.empty()) {
        const VerblunskySpec spec = spec_from_json(parse_json(o.spec_json));
        if (spec.kind() == VerblunskySpec::Kind::TwoPeriodic)
            two_periodic_ab = {spec.cycle()[0], spec.cycle()[1]};
        else if (spec.kind() == VerblunskySpec::Kind::Constant)
            two_periodic_ab = {spec.cycle()[0], spec.cycle()[0]};
    }

    if (two_periodic_ab) {
        const auto [a, b] = *two_periodic_ab;
        const TwoPeriodicMeasure tp = two_periodic_circle_measure(a, b);
        std::vector<double> theta(o.grid), w(o.grid);
        for (long g = 0; g < o.grid; ++g) {
            theta[g] = 2.0 * M_PI * g / o.grid;
            w[g] = tp.measure.weight(theta[g]);
        }
        const GeometricSpectrum gs = geometric_spectrum(a, b);
        if (o.format == "json") {
            json j{{"theta", theta},
                   {"weight", w},
                   {"theta_plus", tp.theta_plus},
                   {"theta_minus", tp.theta_minus},
                   {"z_plus", {tp.z_plus.real(), tp.z_plus.imag()}},
                   {"z_minus", {tp.z_minus.real(), tp.z_minus.imag()}},
                   {"plus_included", tp.plus_included},
                   {"minus_included", tp.minus_included},
                   {"mass_plus", tp.mass_plus},
                   {"mass_minus", tp.mass_minus},
                   {"displayed_mass_plus", tp.displayed_mass_plus},
                   {"displayed_mass_minus", tp.displayed_mass_minus},
                   {"r_plus", gs.r_plus},
                   {"r_minus", gs.r_minus}};
            os << j.dump(2) << "\n";
        } else {
            write_circle_measure_csv(os, theta, w, tp.measure.point_masses);
            os << "# construction, r_plus, " << format_double(gs.r_plus) << "\n";
            os << "# construction, r_minus, " << format_double(gs.r_minus) << "\n";
            os << "# construction, line_point, " << format_double(gs.line_point.real()) << ", "
               << format_double(gs.line_point.imag()) << "\n";
            os << "# construction, line_direction, " << format_double(gs.line_direction.real()) << ", "
               << format_double(gs.line_direction.imag()) << "\n";
            for (const Complex e : gs.band_edges)
                os << "# construction, band_edge, " << format_double(e.real()) << ", "
                   << format_double(e.imag()) << "\n";
            for (std::size_t i = 0; i < gs.discrete_candidates.size(); ++i) {
                const Complex z0 = gs.discrete_candidates[i];
                const bool plus_type = ((1.0 + b) * z0).real() > 0.0; // z+ vs z- root
                os << "# construction, discrete_candidate, " << format_double(z0.real()) << ", "
                   << format_double(z0.imag()) << ", included=" << (gs.included[i] ? "1" : "0")
                   << ", displayed_mass="
                   << format_double(plus_type ? tp.displayed_mass_plus : tp.displayed_mass_minus) << "\n";
            }
        }
        emit(o, os.str());
        return kExitOk;
    }

    // generic spec: radial-limit route
    VerblunskySpec spec = VerblunskySpec::constant(0.0);
    if (!o.spec_json.empty())
        spec = spec_from_json(parse_json(o.spec_json));
    else if (!o.alphas_json.empty()) {
        std::vector<Complex> vals;
        for (const auto& e : parse_json(o.alphas_json)) vals.emplace_back(e.get<double>(), 0.0);
        spec = VerblunskySpec::from_list(vals);
    } else if (o.jacobi.size() == 2) {
        spec = VerblunskySpec::circular_jacobi(o.jacobi[0], o.jacobi[1]);
    } else {
        throw std::invalid_argument("spectrum: provide --walk, --spec, --alphas, --jacobi or --two-periodic");
    }
    os << "# notice, no closed form for this family, using radial limits\n";
    std::vector<double> theta(o.grid);
    for (long g = 0; g < o.grid; ++g) theta[g] = 2.0 * M_PI * g / o.grid;
    RadialLimitOptions opts;
    opts.stab_tol = o.tol;
    opts.threads = 4;
    if (auto h = spec.horizon()) opts.max_depth = std::min<long>(opts.max_depth, *h - 1);
    const RadialMeasure rm = measure_from_caratheodory(spec, theta, opts);
    if (o.format == "json") {
        json masses = json::array();
        for (const auto& pm : rm.masses) masses.push_back({pm.position, pm.mass});
        os.str("");
        os << json{{"theta", rm.theta}, {"weight", rm.weight}, {"point_masses", masses},
                   {"unstable_indices", rm.unstable}}
                  .dump(2)
           << "\n";
    } else {
        write_circle_measure_csv(os, rm.theta, rm.weight, rm.masses);
        for (const std::size_t i : rm.unstable)
            os << "# unstable, " << format_double(rm.theta[i]) << "\n";
    }
    emit(o, os.str());
    return kExitOk;
}

// simulate: classical n-step tables (two routes) + quantum one-step rows
int cmd_simulate(const CommonOpts& o, long steps, long cutoff, long imax) {
    if (o.walk_json.empty()) throw std::invalid_argument("simulate: provide --walk");
    const WalkSpec walk = walk_from_opts(o);
    const bool have_closed_form = walk.kind() == WalkSpec::Kind::Constant;
    SegmentMeasure nu;
    if (have_closed_form) {
        nu = constant_walk_measure(walk.p(0), walk.p(1), walk.q(1)).measure;
    } else if (auto h = walk.horizon()) {
        // a finite-horizon walk has the exact atomic measure of its truncation
        nu = finite_walk_measure(walk, *h);
    } else {
        // boundary-limit measure on a grid, endpoints included for masses
        std::vector<double> grid = {-1.0};
        for (int g = 0; g < 129; ++g) grid.push_back(-1.0 + 2.0 * (g + 0.5) / 129);
        grid.push_back(1.0);
        BoundaryLimitOptions opts;
        opts.max_depth = 200000;
        opts.threads = 4;
        nu = measure_from_stieltjes(walk, grid, opts).as_measure();
    }

    std::vector<ProbabilityRow> rows;
    for (long n = 0; n <= steps; ++n)
        for (long i = 0; i <= imax; ++i)
            for (long j = 0; j <= imax; ++j)
                rows.push_back({i, j, n, n_step_matrix(walk, i, j, n),
                                n_step_spectral(walk, i, j, n, nu)});

    const long K = std::max<long>(cutoff, imax + 2);
    const HalflineOperator op = halfline_blocks(walk, K);
    std::ostringstream os;
    write_probability_table_csv(os, rows);
    if (!have_closed_form)
        os << (walk.horizon()
                   ? "# notice, finite-horizon walk; spectral column uses the exact truncation atoms\n"
                   : "# notice, no closed-form measure; spectral column uses boundary limits on a grid\n");
    for (long j = 0; j <= imax; ++j) {
        const Eigen::VectorXd prob = one_step_distribution(op, walk, j);
        for (long k = 0; k <= std::min<long>(j + 1, K); ++k)
            os << "# quantum_one_step, " << j << ", " << k << ", " << format_double(prob(k)) << "\n";
    }
    emit(o, os.str());
    return kExitOk;
}

int cmd_verify(const CommonOpts& o) {
    const auto results = run_acceptance();
    emit(o, acceptance_to_json(results).dump(2) + "\n");
    return all_passed(results) ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-line random walks, their Szegedy quantization, and the walk <-> OPUC dictionary"};
    app.require_subcommand(1);

    CommonOpts oq, os_, osim, over;
    long steps = 4, cutoff = 16, imax = 4;

    CLI::App* quantize = app.add_subcommand("quantize", "convert between walks and Verblunsky coefficients");
    add_common(quantize, oq, false);
    CLI::App* spectrum = app.add_subcommand("spectrum", "export spectral measures and constructions");
    add_common(spectrum, os_, true);
    CLI::App* simulate = app.add_subcommand("simulate", "n-step probabilities by both routes");
    add_common(simulate, osim, false);
    simulate->add_option("--steps", steps, "number of steps");
    simulate->add_option("--cutoff", cutoff, "half-line cutoff for the quantum operator");
    simulate->add_option("--imax", imax, "largest state index in the table");
    CLI::App* verify = app.add_subcommand("verify", "run the full verification battery");
    add_common(verify, over, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (quantize->parsed()) {
            validate(oq);
            return cmd_quantize(oq);
        }
        if (spectrum->parsed()) {
            validate(os_);
            return cmd_spectrum(os_);
        }
        if (simulate->parsed()) {
            validate(osim);
            return cmd_simulate(osim, steps, cutoff, imax);
        }
        if (verify->parsed()) return cmd_verify(over);
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
