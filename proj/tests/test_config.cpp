#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "horolab/config.hpp"
#include "horolab/error.hpp"
#include "horolab/suites.hpp"

using namespace horolab;

TEST_CASE("compact domain specs") {
    CHECK(parse_domain_spec("disk").kind() == DomainKind::Disk);
    CHECK(parse_domain_spec("half_plane").kind() == DomainKind::HalfPlane);
    CHECK(parse_domain_spec("bidisc").kind() == DomainKind::Polydisc);
    CHECK(parse_domain_spec("ball:2").kind() == DomainKind::Ball);
    CHECK(parse_domain_spec("polydisc:2").dimension() == 2);

    const Domain s = parse_domain_spec("strip:-1,2");
    CHECK(s.strip_im_min() == -1.0);
    CHECK(s.strip_im_max() == 2.0);
    CHECK(parse_domain_spec("strip").strip_im_max() == 1.0);

    CHECK(parse_domain_spec("square").square_half_side() == 1.0);
    CHECK(parse_domain_spec("square:3").square_half_side() == 1.5);

    const Domain poly = parse_domain_spec(
        "polygon:1,-1;1,0;1,1;0,1;-1,1;-1,0;-1,-1;0,-1");
    CHECK(poly.kind() == DomainKind::ConvexPolygon);
    CHECK(poly.vertices().size() == 8);

    CHECK(parse_domain_spec(R"({"kind": "strip", "im_min": 0, "im_max": 2})")
              .strip_im_max() == 2.0);

    CHECK_THROWS_AS((void)parse_domain_spec("torus"), input_error);
    CHECK_THROWS_AS((void)parse_domain_spec("strip:1"), input_error);
    CHECK_THROWS_AS((void)parse_domain_spec("ball:7"), input_error);
    CHECK_THROWS_AS((void)parse_domain_spec(R"({"kind": 5})"), input_error);
}

TEST_CASE("point and target specs") {
    const Point p1 = parse_point_spec("0.3,-0.2");
    CHECK(p1.dim() == 1);
    CHECK(p1[0] == Complex(0.3, -0.2));

    const Point p2 = parse_point_spec("0.1,0.2;0.3,0.4");
    CHECK(p2.dim() == 2);
    CHECK(p2[1] == Complex(0.3, 0.4));

    CHECK_THROWS_AS((void)parse_point_spec("0.1"), input_error);
    CHECK_THROWS_AS((void)parse_point_spec("a,b"), input_error);
    CHECK_THROWS_AS((void)parse_point_spec("1,2;3,4;5,6"), input_error);

    const BoundaryTarget t1 = parse_target_spec("point:1,0");
    CHECK(t1.kind == BoundaryTarget::Kind::BoundaryPoint);
    CHECK(t1.point[0] == Complex(1.0, 0.0));

    const BoundaryTarget t2 = parse_target_spec("end:1:-1,0");
    CHECK(t2.kind == BoundaryTarget::Kind::End);
    CHECK(t2.end_index == 1);
    CHECK(t2.direction == Complex(-1.0, 0.0));

    CHECK(parse_target_spec("end:0").end_index == 0);
    CHECK_THROWS_AS((void)parse_target_spec("middle:0,0"), input_error);
}

TEST_CASE("style and map specs") {
    CHECK(parse_style_spec("radial").kind == ApproachStyle::Kind::Radial);
    CHECK(parse_style_spec("tangential:0.4").angle == doctest::Approx(0.4));
    const ApproachStyle skew = parse_style_spec("skew:1,2");
    CHECK(skew.exponents[0] == 1.0);
    CHECK(skew.exponents[1] == 2.0);
    CHECK(parse_style_spec("height:0.25").height == doctest::Approx(0.25));
    CHECK_THROWS_AS((void)parse_style_spec("spiral"), input_error);

    const HolomorphicMap m1 = parse_map_spec("mobius:0.5,0");
    CHECK(m1.kind == HolomorphicMap::Kind::Mobius);
    CHECK(m1.a == Complex(0.5, 0.0));

    const HolomorphicMap m2 = parse_map_spec("affine:0.5,0:0.5,0");
    CHECK(m2.kind == HolomorphicMap::Kind::Affine);
    CHECK(m2.b == Complex(0.5, 0.0));

    const HolomorphicMap m3 = parse_map_spec("poly:0,0;0,0;1,0");
    CHECK(m3.kind == HolomorphicMap::Kind::Poly);
    CHECK(m3.coeffs.size() == 3);

    const HolomorphicMap m4 = parse_map_spec("conjugate:affine:0.5,0:0.5,0");
    CHECK(m4.kind == HolomorphicMap::Kind::DiskConjugate);
    REQUIRE(m4.parts.size() == 1);
    CHECK(m4.parts[0].kind == HolomorphicMap::Kind::Affine);

    CHECK_THROWS_AS((void)parse_map_spec("teleport:1,0"), input_error);
}

TEST_CASE("run config parses defaults and full documents") {
    const RunConfig def = parse_run_config_text("{}");
    CHECK(def.domain.kind() == DomainKind::Disk);
    CHECK(def.horizon == 200);
    CHECK(def.terms == 40);
    CHECK(def.seed == 1234);
    CHECK_FALSE(def.map.has_value());

    const RunConfig cfg = parse_run_config_text(R"({
        "domain": "bidisc",
        "map": {"kind": "affine", "a": [0.5, 0], "b": [0.5, 0]},
        "pole": [[0, 0], [0, 0]],
        "points": [[[0, 0], [0.5, 0]]],
        "seeds": [[[0, 0], [0, 0]], [[0.3, 0], [0, 0.2]]],
        "target": "point:1,0;1,0",
        "styles": ["radial", "skew:1,2"],
        "radii": [0.5, 1.0, 2.0],
        "powers": [1, 2, 5],
        "horizon": 64,
        "terms": 30,
        "seed": 99
    })");
    CHECK(cfg.domain.kind() == DomainKind::Polydisc);
    REQUIRE(cfg.map.has_value());
    CHECK(cfg.map->kind == HolomorphicMap::Kind::Affine);
    REQUIRE(cfg.pole.has_value());
    CHECK(cfg.pole->dim() == 2);
    CHECK(cfg.points.size() == 1);
    CHECK(cfg.seeds.size() == 2);
    CHECK(cfg.styles.size() == 2);
    CHECK(cfg.radii.size() == 3);
    CHECK(cfg.powers.size() == 3);
    CHECK(cfg.horizon == 64);
    CHECK(cfg.terms == 30);
    CHECK(cfg.seed == 99);

    CHECK_THROWS_AS((void)parse_run_config_text(R"({"phase": 7})"), input_error);
    CHECK_THROWS_AS((void)parse_run_config_text("{"), input_error);
    CHECK_THROWS_AS((void)parse_run_config_text("[1,2]"), input_error);
}

TEST_CASE("run config round-trips through a file") {
    const std::string path = "horolab_test_config.json";
    {
        std::ofstream out(path);
        out << R"({"domain": "strip:0,1", "horizon": 33})";
    }
    const RunConfig cfg = load_run_config(path);
    CHECK(cfg.domain.kind() == DomainKind::Strip);
    CHECK(cfg.horizon == 33);
    std::remove(path.c_str());

    CHECK_THROWS_AS((void)load_run_config("no_such_file_here.json"), input_error);
}

TEST_CASE("verification suites are named and runnable") {
    const auto names = suite_names();
    CHECK(names.size() >= 8);

    const SuiteReport report = run_suite("distances");
    CHECK(report.suite == "distances");
    CHECK_FALSE(report.checks.empty());
    CHECK(report.all_pass());
    for (const SuiteCheck& c : report.checks) {
        CHECK_FALSE(c.name.empty());
        CHECK_FALSE(c.detail.empty());
    }

    CHECK_THROWS_AS((void)run_suite("astrology"), input_error);
}
