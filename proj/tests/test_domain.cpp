#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "horolab/domain.hpp"
#include "horolab/error.hpp"
#include "horolab/probes.hpp"

using namespace horolab;

namespace {

std::vector<Complex> regular_octagon(double radius) {
    std::vector<Complex> vs;
    for (int k = 0; k < 8; ++k)
        vs.push_back(std::polar(radius, 2.0 * std::numbers::pi * k / 8.0));
    return vs;
}

// side-2 square traced counter-clockwise with edge midpoints included,
// so the vertex count clears the polygon minimum while staying convex
std::vector<Complex> square_with_midpoints() {
    return {{1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}};
}

}  // namespace

TEST_CASE("disk membership is strictly open") {
    const Domain d = Domain::disk();
    CHECK(d.contains(Point(Complex(0.0, 0.0))));
    CHECK(d.contains(Point(Complex(0.999999, 0.0))));
    CHECK_FALSE(d.contains(Point(Complex(1.0, 0.0))));
    CHECK_FALSE(d.contains(Point(Complex(0.0, -1.0))));
    CHECK_FALSE(d.contains(Point(Complex(1.5, 0.2))));
    CHECK(d.bounded());
    CHECK(d.convex());
    CHECK(d.dimension() == 1);
}

TEST_CASE("boundary distances match the planar formulas") {
    CHECK(Domain::disk().boundary_distance(Point(Complex(0.25, 0.0))) ==
          doctest::Approx(0.75).epsilon(1e-14));
    CHECK(Domain::half_plane().boundary_distance(Point(Complex(7.0, 0.125))) ==
          doctest::Approx(0.125).epsilon(1e-14));

    const Domain s = Domain::strip(0.0, 1.0);
    CHECK(s.boundary_distance(Point(Complex(-40.0, 0.25))) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(s.boundary_distance(Point(Complex(3.0, 0.75))) ==
          doctest::Approx(0.25).epsilon(1e-14));

    const Domain p = Domain::polydisc(2);
    CHECK(p.boundary_distance(Point(Complex(0.5, 0.0), Complex(0.0, 0.9))) ==
          doctest::Approx(0.1).epsilon(1e-12));

    const Domain sq = Domain::convex_polygon(square_with_midpoints());
    CHECK(sq.boundary_distance(Point(Complex(0.0, 0.0))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sq.boundary_distance(Point(Complex(0.7, -0.2))) ==
          doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("closure gap vanishes inside and grows outside") {
    const Domain d = Domain::disk();
    CHECK(d.closure_gap(Point(Complex(0.3, 0.3))) == 0.0);
    CHECK(d.closure_gap(Point(Complex(1.0, 0.0))) == 0.0);
    CHECK(d.closure_gap(Point(Complex(2.0, 0.0))) == doctest::Approx(1.0).epsilon(1e-14));

    const Domain hp = Domain::half_plane();
    CHECK(hp.closure_gap(Point(Complex(5.0, -0.5))) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("exhaustion levels are minimal and nested") {
    const Domain s = Domain::strip(0.0, 1.0);
    const Point z(Complex(5.0, 0.5));
    const int idx = s.exhaustion_index(z);
    CHECK(s.in_level(z, idx));
    CHECK_FALSE(s.in_level(z, idx - 1));
    for (int j = idx; j < idx + 4; ++j) CHECK(s.in_level(z, j));

    // the clip radius grows with the level, so far-out points sit deep
    CHECK(s.exhaustion_index(Point(Complex(20.0, 0.5))) >= 20);

    CHECK_THROWS_AS((void)s.exhaustion_index(Point(Complex(0.0, 2.0))), input_error);
    // representable but thinner than the deepest tracked margin
    CHECK_THROWS_AS((void)Domain::half_plane().exhaustion_index(Point(Complex(0.0, 1e-30))),
                    numeric_error);
}

TEST_CASE("anchors are interior and probe windows cover them") {
    for (const Domain& d : {Domain::disk(), Domain::half_plane(), Domain::strip(-1.0, 2.0),
                            Domain::polydisc(2), Domain::ball(2),
                            Domain::convex_polygon(regular_octagon(1.0)),
                            Domain::conformal_square(2.0)}) {
        CAPTURE(d.describe());
        const Point a = d.anchor();
        CHECK(d.contains(a));
        const Window w = d.probe_window();
        REQUIRE(static_cast<int>(w.rects.size()) == d.dimension());
        for (int k = 0; k < d.dimension(); ++k) {
            const auto& r = w.rects[static_cast<size_t>(k)];
            CHECK(r.re0 < r.re1);
            CHECK(r.im0 < r.im1);
            CHECK(r.re0 <= a[k].real());
            CHECK(a[k].real() <= r.re1);
        }
    }
}

TEST_CASE("polygon constructor validates shape") {
    CHECK_THROWS_AS((void)Domain::convex_polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}),
                    input_error);

    auto dented = regular_octagon(1.0);
    dented[3] = Complex(0.0, 0.0);  // reflex vertex
    CHECK_THROWS_AS((void)Domain::convex_polygon(dented), input_error);

    // collinear runs are fine
    const Domain sq = Domain::convex_polygon(square_with_midpoints());
    CHECK(sq.convex());
    CHECK(sq.contains(Point(Complex(0.99, 0.99))));
    CHECK_FALSE(sq.contains(Point(Complex(1.01, 0.0))));
    CHECK(sq.vertices().size() == 8);
}

TEST_CASE("kind-specific accessors guard their kind") {
    const Domain d = Domain::disk();
    CHECK_THROWS_AS((void)d.vertices(), input_error);
    CHECK_THROWS_AS((void)d.strip_im_min(), input_error);
    CHECK_THROWS_AS((void)d.factors(), input_error);
    CHECK_THROWS_AS((void)d.square_half_side(), input_error);

    const Domain s = Domain::strip(-0.5, 1.5);
    CHECK(s.strip_im_min() == -0.5);
    CHECK(s.strip_im_max() == 1.5);

    CHECK(Domain::conformal_square(3.0).square_half_side() == doctest::Approx(1.5));
}

TEST_CASE("products combine factors coordinatewise") {
    const Domain bidisc = Domain::polydisc(2);
    CHECK(bidisc.dimension() == 2);
    CHECK(bidisc.bounded());
    CHECK(bidisc.contains(Point(Complex(0.9, 0.0), Complex(0.0, -0.9))));
    CHECK_FALSE(bidisc.contains(Point(Complex(0.9, 0.0), Complex(0.0, -1.1))));

    const Domain mixed = Domain::product({Domain::disk(), Domain::strip(0.0, 1.0)});
    CHECK(mixed.dimension() == 2);
    CHECK_FALSE(mixed.bounded());
    CHECK(mixed.factors().size() == 2);
    CHECK_THROWS_AS((void)bidisc.factors(), input_error);
    CHECK(mixed.contains(Point(Complex(0.5, 0.0), Complex(30.0, 0.5))));
    CHECK(mixed.boundary_distance(Point(Complex(0.5, 0.0), Complex(30.0, 0.9))) ==
          doctest::Approx(0.1).epsilon(1e-12));

    CHECK_THROWS_AS((void)Domain::product({}), input_error);
    CHECK_THROWS_AS((void)Domain::product({Domain::disk(), Domain::ball(2)}), input_error);
    CHECK_THROWS_AS(
        (void)Domain::product({Domain::disk(), Domain::disk(), Domain::disk()}),
        input_error);
}

TEST_CASE("ball membership uses the Euclidean norm") {
    const Domain b = Domain::ball(2);
    CHECK(b.contains(Point(Complex(0.6, 0.0), Complex(0.0, 0.6))));
    CHECK_FALSE(b.contains(Point(Complex(0.8, 0.0), Complex(0.0, 0.7))));
    CHECK(b.boundary_distance(Point(Complex(0.3, 0.0), Complex(0.4, 0.0))) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("boundary projection keeps interior coordinates") {
    const Domain d = Domain::disk();
    const Point pr = project_to_boundary(d, Point(Complex(0.3, 0.4)));
    CHECK(std::abs(pr[0]) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::arg(pr[0]) == doctest::Approx(std::atan2(0.4, 0.3)).epsilon(1e-12));

    const Domain s = Domain::strip(0.0, 1.0);
    const Point ps = project_to_boundary(s, Point(Complex(4.0, 0.9)));
    CHECK(ps[0].imag() == doctest::Approx(1.0));
    CHECK(ps[0].real() == doctest::Approx(4.0));
}

TEST_CASE("describe distinguishes the kinds") {
    CHECK(Domain::disk().describe() != Domain::half_plane().describe());
    CHECK(Domain::strip(0.0, 1.0).describe() != Domain::strip(0.0, 2.0).describe());
    CHECK_FALSE(Domain::conformal_square(2.0).describe().empty());
}

TEST_CASE("probe grids are deterministic, interior, and sized as asked") {
    const Domain d = Domain::disk();
    const auto a = probe_grid(d);
    const auto b = probe_grid(d);
    REQUIRE(a.size() == 64);
    REQUIRE(b.size() == a.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    for (const Point& p : a) CHECK(d.boundary_distance(p) >= 0.02 - 1e-15);

    CHECK(probe_grid(Domain::polydisc(2)).size() == 256);
    CHECK(probe_grid(d, 1000, 0.01).size() == 1000);

    const Domain hp = Domain::half_plane();
    for (const Point& p : probe_grid(hp, 100)) CHECK(hp.contains(p));
}

TEST_CASE("halton fills the unit interval uniformly") {
    double lo = 1.0, hi = 0.0;
    for (size_t i = 1; i <= 512; ++i) {
        const double v = halton(i, 2);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}
