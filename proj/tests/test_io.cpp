#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <sstream>

#include "qwalk/io.hpp"

using namespace qwalk;

TEST_CASE("format_double round trips") {
    for (double v : {0.0, 1.0, 0.375, -0.3333333333333333, 2.0 / 3.0, 1e-300, 6.02e23,
                     0.1 + 0.2, M_PI}) {
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
    CHECK(format_double(0.375) == "0.375");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("spec JSON fixpoint") {
    const char* inputs[] = {
        R"({"kind":"constant","a":[0.5,0.25]})",
        R"({"kind":"two_periodic","a":[0.5,0],"b":[-0.5,0]})",
        R"({"kind":"periodic","values":[[0.1,0],[0.2,0.1],[-0.3,0]]})",
        R"({"kind":"list","values":[[0.1,0],[0.2,0]]})",
        R"({"kind":"circular_jacobi","alpha":0.5,"beta":1.25})",
    };
    for (const char* in : inputs) {
        const json once = spec_to_json(spec_from_json(json::parse(in)));
        const json twice = spec_to_json(spec_from_json(once));
        CHECK(once == twice);
        CHECK(once.dump() == twice.dump());
    }
}

TEST_CASE("walk JSON both shapes") {
    const WalkSpec cw = walk_from_json(json::parse(R"({"kind":"walk","p0":0.5,"p":0.375,"q":0.375})"));
    CHECK(cw.kind() == WalkSpec::Kind::Constant);
    CHECK(cw.r(3) == doctest::Approx(0.25));
    const json j = walk_to_json(cw, 4);
    CHECK(walk_from_json(j).p(2) == cw.p(2));

    const WalkSpec lw = walk_from_json(
        json::parse(R"({"kind":"walk","p":[0.5,0.3],"q":[0.0,0.3],"r":[0.5,0.4]})"));
    CHECK(lw.kind() == WalkSpec::Kind::Lists);
    const json jl = walk_to_json(lw, 2);
    const json jl2 = walk_to_json(walk_from_json(jl), 2);
    CHECK(jl == jl2);
}

TEST_CASE("correspondence JSON round trip") {
    const CorrespondenceRecord rec = correspondence_from_alphas({0.5, -0.5, 0.5, -0.5, 0.5});
    const json j = correspondence_to_json(rec);
    const CorrespondenceRecord back = correspondence_from_json(j);
    CHECK(back.alphas == rec.alphas);
    CHECK(back.p == rec.p);
    CHECK(back.q == rec.q);
    CHECK(back.r == rec.r);
    CHECK(back.s == rec.s);
    CHECK(correspondence_to_json(back) == j);
}

TEST_CASE("CSV output is deterministic and carries the point-mass block") {
    std::ostringstream a, b;
    write_segment_measure_csv(a, {-0.5, 0.0, 0.5}, {0.1, 0.2, 0.3}, {{1.0, 2.0 / 7.0}});
    write_segment_measure_csv(b, {-0.5, 0.0, 0.5}, {0.1, 0.2, 0.3}, {{1.0, 2.0 / 7.0}});
    CHECK(a.str() == b.str());
    CHECK(a.str() == "x,u\n-0.5,0.1\n0,0.2\n0.5,0.3\n# point_mass, 1, 0.2857142857142857\n");

    std::ostringstream c;
    write_circle_measure_csv(c, {0.0}, {1.0}, {});
    CHECK(c.str() == "theta,weight\n0,1\n");

    std::ostringstream m;
    Eigen::MatrixXcd mat(1, 2);
    mat << Complex(1.0, -2.0), Complex(0.5, 0.0);
    write_matrix_csv(m, mat);
    CHECK(m.str() == "row,col,re,im\n0,0,1,-2\n0,1,0.5,0\n");

    std::ostringstream p;
    write_probability_table_csv(p, {{0, 0, 2, 0.5, 0.5}});
    CHECK(p.str() == "i,j,n,P_matrix,P_spectral,abs_diff\n0,0,2,0.5,0.5,0\n");
}

TEST_CASE("lifting report JSON") {
    LiftingReport rep;
    rep.d_eigenvalues = Eigen::VectorXd::Zero(1);
    rep.ok = true;
    const json j = lifting_report_to_json(rep);
    CHECK(j.at("ok") == true);
    CHECK(j.at("pairs").size() == 1);
}

TEST_CASE("malformed JSON inputs are rejected") {
    CHECK_THROWS_AS(spec_from_json(json::parse(R"({"kind":"unheard_of"})")), std::invalid_argument);
    CHECK_THROWS_AS(spec_from_json(json::parse(R"({"kind":"constant","a":[1.5,0]})")),
                    std::invalid_argument);
    CHECK_THROWS(spec_from_json(json::parse(R"({"kind":"constant"})")));               // missing field
    CHECK_THROWS(walk_from_json(json::parse(R"({"kind":"walk","p":[0.5],"q":[0.0]})"))); // missing r
    CHECK_THROWS_AS(walk_from_json(json::parse(R"({"kind":"walk","p0":0.5,"p":0.6,"q":0.5})")),
                    std::invalid_argument);
    // complex entries accept plain numbers as reals
    const VerblunskySpec s = spec_from_json(json::parse(R"({"kind":"list","values":[0.25,[0.5,0.1]]})"));
    CHECK(s.at(0) == Complex(0.25));
    CHECK(s.at(1) == Complex(0.5, 0.1));
}
