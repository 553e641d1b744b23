#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "horolab/engine.hpp"
#include "horolab/error.hpp"

using namespace horolab;

namespace {

Complex random_disk_point(std::mt19937_64& rng, double rmax = 0.95) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = rmax * std::sqrt(u(rng));
    return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

Complex mobius(Complex a, Complex z) { return (z + a) / (1.0 + std::conj(a) * z); }

// frozen 30-digit reference values
constexpr double kAtanhHalf = 0.549306144334054845;
constexpr double kSqHalf = 0.504522658833651695;     // square side 2: k(0, 0.5)
constexpr double kSqNine = 1.360312481589774198;     // square side 2: k(0, 0.9)
constexpr double kSqAcross = 1.009045317667303391;   // square side 2: k(-0.5, 0.5)
constexpr double kSqDiag = 0.499494398620132643;     // square side 2: k(0, 0.3+0.4i)

}  // namespace

TEST_CASE("disk distance hits the closed form and its invariances") {
    const auto e = DistanceEngine::make(Domain::disk());
    CHECK(e.mode() == EngineMode::Exact);
    CHECK(e.pointwise());

    CHECK(e.distance(Point(Complex(0, 0)), Point(Complex(0.5, 0))) ==
          doctest::Approx(kAtanhHalf).epsilon(1e-14));
    CHECK(e.distance(Point(Complex(0, 0)), Point(Complex(0, -0.7))) ==
          doctest::Approx(0.867300527694053194).epsilon(1e-14));

    std::mt19937_64 rng(7);
    const Complex a = random_disk_point(rng, 0.6);
    for (int i = 0; i < 200; ++i) {
        const Complex z = random_disk_point(rng), w = random_disk_point(rng),
                      v = random_disk_point(rng);
        const double dzw = e.distance(Point(z), Point(w));
        CHECK(dzw == doctest::Approx(e.distance(Point(w), Point(z))).epsilon(1e-13));
        CHECK(dzw <= e.distance(Point(z), Point(v)) + e.distance(Point(v), Point(w)) + 1e-12);
        CHECK(e.distance(Point(mobius(a, z)), Point(mobius(a, w))) ==
              doctest::Approx(dzw).epsilon(1e-11));
    }
    CHECK(e.distance(Point(Complex(0.3, -0.4)), Point(Complex(0.3, -0.4))) == 0.0);
}

TEST_CASE("half plane distance agrees with the cross-ratio form") {
    const auto e = DistanceEngine::make(Domain::half_plane());
    CHECK(e.mode() == EngineMode::ConformalPullback);

    // atanh |(z-w)/(z-conj w)| at z=1+i, w=3+2i
    CHECK(e.distance(Point(Complex(1, 1)), Point(Complex(3, 2))) ==
          doctest::Approx(0.725287256911290104).epsilon(1e-13));

    // vertical line: half the log of the height ratio
    CHECK(e.distance(Point(Complex(0, 1)), Point(Complex(0, 8))) ==
          doctest::Approx(0.5 * std::log(8.0)).epsilon(1e-13));

    // horizontal translation invariance
    const double d0 = e.distance(Point(Complex(0, 0.3)), Point(Complex(1, 2)));
    const double d7 = e.distance(Point(Complex(7, 0.3)), Point(Complex(8, 2)));
    CHECK(d0 == doctest::Approx(d7).epsilon(1e-13));
}

TEST_CASE("strip distance survives long horizontal separations") {
    const auto e = DistanceEngine::make(Domain::strip(0.0, 1.0));
    CHECK(e.distance(Point(Complex(0, 0.5)), Point(Complex(40, 0.5))) ==
          doctest::Approx(62.831853071795864769).epsilon(1e-12));

    // moderate points cross-check against the exp chart into the half plane
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.05, 0.95);
    for (int i = 0; i < 100; ++i) {
        const Complex z(ux(rng), uy(rng)), w(ux(rng), uy(rng));
        const Complex pz = std::exp(std::numbers::pi * z);
        const Complex pw = std::exp(std::numbers::pi * w);
        CHECK(e.distance(Point(z), Point(w)) ==
              doctest::Approx(half_plane_distance(pz, pw)).epsilon(1e-10));
    }

    // z -> 2z maps the unit strip onto {0 < Im < 2}; distances transport unchanged
    const auto wide = DistanceEngine::make(Domain::strip(0.0, 2.0));
    CHECK(wide.distance(Point(Complex(0, 1)), Point(Complex(6, 1))) ==
          doctest::Approx(e.distance(Point(Complex(0, 0.5)), Point(Complex(3, 0.5))))
              .epsilon(1e-12));
}

TEST_CASE("ball distance is rotation and involution invariant") {
    const auto e = DistanceEngine::make(Domain::ball(2));
    CHECK(e.distance(Point(Complex(0, 0), Complex(0, 0)),
                     Point(Complex(0.3, 0), Complex(0.4, 0))) ==
          doctest::Approx(kAtanhHalf).epsilon(1e-13));

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int i = 0; i < 100; ++i) {
        const Point z(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)));
        const Point w(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)));
        const Point a(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)));
        const double d = e.distance(z, w);
        CHECK(d == doctest::Approx(e.distance(w, z)).epsilon(1e-12));
        CHECK(e.distance(ball_involution(a, z), ball_involution(a, w)) ==
              doctest::Approx(d).epsilon(1e-10));
    }
    const Point a(Complex(0.2, 0.1), Complex(-0.3, 0.25));
    CHECK(ball_involution(a, a).max_abs() < 1e-14);
    CHECK(ball_involution(a, Point(Complex(0, 0), Complex(0, 0))).sup_dist(a) < 1e-14);
}

TEST_CASE("product distance is the max over factor distances") {
    const auto e = DistanceEngine::make(Domain::polydisc(2));
    REQUIRE(e.factor_engines().size() == 2);

    CHECK(e.distance(Point(Complex(0, 0), Complex(0, 0)),
                     Point(Complex(0.3, 0), Complex(0.4, 0.2))) ==
          doctest::Approx(0.481211825059603447).epsilon(1e-13));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const Point z(random_disk_point(rng), random_disk_point(rng));
        const Point w(random_disk_point(rng), random_disk_point(rng));
        const double d0 = disk_distance(z[0], w[0]);
        const double d1 = disk_distance(z[1], w[1]);
        CHECK(e.distance(z, w) == doctest::Approx(std::max(d0, d1)).epsilon(1e-13));
    }

    const auto mixed =
        DistanceEngine::make(Domain::product({Domain::disk(), Domain::strip(0.0, 1.0)}));
    const Point z(Complex(0, 0), Complex(0, 0.5)), w(Complex(0.5, 0), Complex(9, 0.5));
    CHECK(mixed.distance(z, w) ==
          doctest::Approx(unit_strip_distance(Complex(0, 0.5), Complex(9, 0.5)))
              .epsilon(1e-12));
}

TEST_CASE("square distances match the lemniscatic chart references") {
    const auto e = DistanceEngine::make(Domain::conformal_square(2.0));
    CHECK(e.mode() == EngineMode::ConformalPullback);
    CHECK(e.chart() != nullptr);

    CHECK(e.distance(Point(Complex(0, 0)), Point(Complex(0.5, 0))) ==
          doctest::Approx(kSqHalf).epsilon(1e-10));
    CHECK(e.distance(Point(Complex(0, 0)), Point(Complex(0.9, 0))) ==
          doctest::Approx(kSqNine).epsilon(1e-10));
    CHECK(e.distance(Point(Complex(-0.5, 0)), Point(Complex(0.5, 0))) ==
          doctest::Approx(kSqAcross).epsilon(1e-10));
    CHECK(e.distance(Point(Complex(0, 0)), Point(Complex(0.3, 0.4))) ==
          doctest::Approx(kSqDiag).epsilon(1e-10));

    // the dihedral symmetries of the square are isometries
    const Complex z(0.31, -0.12), w(-0.55, 0.4);
    const double d = e.distance(Point(z), Point(w));
    CHECK(e.distance(Point(std::conj(z)), Point(std::conj(w))) ==
          doctest::Approx(d).epsilon(1e-11));
    CHECK(e.distance(Point(Complex(0, 1) * z), Point(Complex(0, 1) * w)) ==
          doctest::Approx(d).epsilon(1e-11));
}

TEST_CASE("infinitesimal metric pins") {
    const auto disk = DistanceEngine::make(Domain::disk());
    Interval k0 = disk.infinitesimal(Point(Complex(0, 0)), Point(Complex(1, 0)));
    CHECK(k0.lo == k0.hi);
    CHECK(k0.lo == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(disk.infinitesimal(Point(Complex(0.5, 0)), Point(Complex(1, 0))).mid() ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(disk.infinitesimal(Point(Complex(0.5, 0)), Point(Complex(2, 0))).mid() ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-14));

    const auto hp = DistanceEngine::make(Domain::half_plane());
    CHECK(hp.infinitesimal(Point(Complex(0, 1)), Point(Complex(1, 0))).mid() ==
          doctest::Approx(0.5).epsilon(1e-13));

    const auto st = DistanceEngine::make(Domain::strip(0.0, 1.0));
    CHECK(st.infinitesimal(Point(Complex(0, 0.5)), Point(Complex(1, 0))).mid() ==
          doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));

    // convex polygon: two-sided boundary-gap sandwich
    const Domain sq = Domain::convex_polygon(
        {{1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}});
    const auto chain = DistanceEngine::make(sq);
    const Interval iv = chain.infinitesimal(Point(Complex(0, 0)), Point(Complex(1, 0)));
    CHECK(iv.lo == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(iv.hi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chain engine brackets the square truth") {
    const Domain sq = Domain::convex_polygon(
        {{1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}});
    const auto e = DistanceEngine::make(sq);
    CHECK(e.mode() == EngineMode::ChainApprox);
    CHECK_FALSE(e.pointwise());

    const Point z(Complex(0, 0)), w(Complex(0.5, 0));
    const Interval iv = e.distance_interval(z, w);
    CHECK(iv.lo > 0.0);
    CHECK(iv.contains(kSqHalf));
    CHECK(iv.lo <= 0.5 * iv.hi + 1e-12);
    CHECK(e.distance(z, w) == doctest::Approx(iv.mid()).epsilon(1e-14));

    const Interval rev = e.distance_interval(w, z);
    CHECK(rev.lo == doctest::Approx(iv.lo).epsilon(1e-13));
    CHECK(rev.hi == doctest::Approx(iv.hi).epsilon(1e-13));

    const Interval diag = e.distance_interval(z, z);
    CHECK(diag.lo == 0.0);
    CHECK(diag.hi == 0.0);
}

TEST_CASE("chain refinement reports an unreachable tolerance") {
    const Domain sq = Domain::convex_polygon(
        {{1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}});
    const auto e = DistanceEngine::make(sq, ChainParams{0.04, 0.009, 1e-6});
    try {
        (void)e.distance(Point(Complex(0, 0)), Point(Complex(0.5, 0)));
        FAIL("expected refinement_error");
    } catch (const refinement_error& err) {
        CHECK(err.best_lo > 0.0);
        CHECK(err.best_lo < err.best_hi);
        CHECK(err.best_lo <= kSqHalf);
        CHECK(kSqHalf <= err.best_hi);
    }
}

TEST_CASE("distance rejects bad inputs") {
    const auto e = DistanceEngine::make(Domain::disk());
    CHECK_THROWS_AS((void)e.distance(Point(Complex(0, 0)), Point(Complex(1.2, 0))),
                    input_error);
    CHECK_THROWS_AS((void)e.distance(Point(Complex(1.0, 0)), Point(Complex(0, 0))),
                    input_error);
    CHECK_THROWS_AS(
        (void)e.distance(Point(Complex(0, 0)), Point(Complex(0, 0), Complex(0, 0))),
        input_error);

    const auto b = DistanceEngine::make(Domain::ball(2));
    CHECK_THROWS_AS(
        (void)b.distance(Point(Complex(0.8, 0), Complex(0.8, 0)),
                         Point(Complex(0, 0), Complex(0, 0))),
        input_error);
}
