#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "horolab/ends.hpp"
#include "horolab/error.hpp"

using namespace horolab;

namespace {

std::vector<Point> radial_disk(Complex sigma, int n_terms) {
    std::vector<Point> pts;
    for (int n = 1; n <= n_terms; ++n)
        pts.emplace_back(sigma * (1.0 - std::ldexp(1.0, -n)));
    return pts;
}

std::vector<Point> strip_march(double speed, double height, int n_terms) {
    std::vector<Point> pts;
    for (int n = 1; n <= n_terms; ++n) pts.emplace_back(Complex(speed * n, height));
    return pts;
}

}  // namespace

TEST_CASE("end census per domain") {
    CHECK(build_end_tree(Domain::disk(), 6).ends().empty());
    CHECK(build_end_tree(Domain::conformal_square(2.0), 6).ends().empty());
    CHECK(build_end_tree(Domain::polydisc(2), 6).ends().empty());
    CHECK(build_end_tree(Domain::ball(2), 6).ends().empty());
    CHECK(build_end_tree(Domain::strip(0.0, 1.0), 6).ends().size() == 2);
    CHECK(build_end_tree(Domain::half_plane(), 6).ends().size() == 1);
}

TEST_CASE("end tree construction guards its inputs") {
    CHECK_THROWS_AS((void)build_end_tree(Domain::disk(), 0), input_error);
    CHECK_THROWS_AS((void)build_end_tree(Domain::disk(), 13), input_error);
    // unbounded two-dimensional domains are out of grid reach
    CHECK_THROWS_AS(
        (void)build_end_tree(Domain::product({Domain::disk(), Domain::strip(0.0, 1.0)}), 5),
        input_error);
}

TEST_CASE("strip tree has two linked component chains") {
    const EndTree tree = build_end_tree(Domain::strip(0.0, 1.0), 6);
    REQUIRE(tree.max_level() == 6);
    REQUIRE(tree.levels().size() == 6);

    // the coarse first level may still bridge the two sides at the clip
    // pinch; once separated, the count stays at two
    CHECK(tree.levels().back().size() == 2);
    for (size_t i = 0; i < tree.levels().size(); ++i) {
        CHECK(tree.levels()[i].size() >= 1);
        CHECK(tree.levels()[i].size() <= 2);
        if (i > 0) CHECK(tree.levels()[i].size() >= tree.levels()[i - 1].size());
        for (const EndComponent& c : tree.levels()[i]) {
            CHECK(c.cells > 0);
            if (i == 0) {
                CHECK(c.parent == -1);
            } else {
                CHECK(c.parent >= 0);
                CHECK(c.parent < static_cast<int>(tree.levels()[i - 1].size()));
            }
        }
    }

    REQUIRE(tree.ends().size() == 2);
    double dir_min = 1.0, dir_max = -1.0;
    for (const End& e : tree.ends()) {
        REQUIRE(e.component_path.size() == 6);
        for (size_t j = 0; j < e.component_path.size(); ++j) {
            CHECK(e.component_path[j] >= 0);
            CHECK(e.component_path[j] < static_cast<int>(tree.levels()[j].size()));
        }
        CHECK(std::abs(e.direction) == doctest::Approx(1.0).epsilon(1e-9));
        dir_min = std::min(dir_min, e.direction.real());
        dir_max = std::max(dir_max, e.direction.real());
    }
    CHECK(dir_min < -0.9);  // one end per side
    CHECK(dir_max > 0.9);

    // grid lookup: the two sides land in different components, clipped
    // points land in none
    const int right = tree.component_at(2, Complex(3.0, 0.5));
    const int left = tree.component_at(2, Complex(-3.0, 0.5));
    CHECK(right >= 0);
    CHECK(left >= 0);
    CHECK(right != left);
    CHECK(tree.component_at(2, Complex(0.0, 0.5)) == -1);

    for (int j = 1; j < 6; ++j) CHECK(tree.resolution(j) >= tree.resolution(j + 1));
    CHECK(tree.resolution(6) > 0.0);
}

TEST_CASE("classify_limit identifies boundary points") {
    const EndTree tree = build_end_tree(Domain::disk(), 6);

    const LimitClass radial = classify_limit(tree, radial_disk(Complex(1.0, 0.0), 20));
    CHECK(radial.kind == LimitClass::Kind::Boundary);
    CHECK(same_target(radial.target, BoundaryTarget::at(Point(Complex(1.0, 0.0)))));

    const Complex sigma = std::polar(1.0, 2.0);
    const LimitClass tilted = classify_limit(tree, radial_disk(sigma, 20));
    CHECK(tilted.kind == LimitClass::Kind::Boundary);
    CHECK(same_target(tilted.target, BoundaryTarget::at(Point(sigma))));
}

TEST_CASE("classify_limit identifies interior limits and refuses noise") {
    const EndTree tree = build_end_tree(Domain::disk(), 6);

    std::vector<Point> settle;
    for (int n = 1; n <= 20; ++n)
        settle.emplace_back(Complex(0.3 + std::ldexp(1.0, -n), -0.1));
    CHECK(classify_limit(tree, settle).kind == LimitClass::Kind::Interior);

    std::vector<Point> pingpong;
    for (int n = 0; n < 20; ++n) pingpong.emplace_back(Complex(n % 2 ? 0.9 : -0.9, 0.0));
    CHECK(classify_limit(tree, pingpong).kind == LimitClass::Kind::NoLimit);

    std::vector<Point> outside = radial_disk(Complex(1.0, 0.0), 5);
    outside.emplace_back(Complex(2.0, 0.0));
    CHECK_THROWS_AS((void)classify_limit(tree, outside), input_error);
}

TEST_CASE("classify_limit identifies ends with their directions") {
    const EndTree strip_tree = build_end_tree(Domain::strip(0.0, 1.0), 6);

    const LimitClass right = classify_limit(strip_tree, strip_march(1.0, 0.5, 20));
    REQUIRE(right.kind == LimitClass::Kind::End);
    CHECK(right.target.kind == BoundaryTarget::Kind::End);
    CHECK(right.target.direction.real() > 0.9);

    const LimitClass left = classify_limit(strip_tree, strip_march(-1.0, 0.25, 20));
    REQUIRE(left.kind == LimitClass::Kind::End);
    CHECK(left.target.direction.real() < -0.9);
    CHECK(right.target.end_index != left.target.end_index);

    // geometric escape skips annuli but still pins the single half-plane end
    const EndTree hp_tree = build_end_tree(Domain::half_plane(), 6);
    std::vector<Point> doubling;
    for (int n = 0; n <= 8; ++n) doubling.emplace_back(Complex(0.0, std::ldexp(1.0, n)));
    const LimitClass up = classify_limit(hp_tree, doubling);
    REQUIRE(up.kind == LimitClass::Kind::End);
    CHECK(up.target.end_index == 0);
}

TEST_CASE("same_target separates kinds, merges nearby points") {
    const BoundaryTarget p1 = BoundaryTarget::at(Point(Complex(1.0, 0.0)));
    const BoundaryTarget p2 = BoundaryTarget::at(Point(Complex(1.0, 1e-9)));
    const BoundaryTarget p3 = BoundaryTarget::at(Point(Complex(0.0, 1.0)));
    const BoundaryTarget e0 = BoundaryTarget::end(0, Complex(1.0, 0.0));
    const BoundaryTarget e1 = BoundaryTarget::end(1, Complex(-1.0, 0.0));

    CHECK(same_target(p1, p2));
    CHECK_FALSE(same_target(p1, p3));
    CHECK_FALSE(same_target(p1, e0));
    CHECK(same_target(e0, e0));
    CHECK_FALSE(same_target(e0, e1));
}

TEST_CASE("sequence_converges_to cross-checks claimed targets") {
    const Domain disk = Domain::disk();
    const auto seq = radial_disk(Complex(1.0, 0.0), 20);
    CHECK(sequence_converges_to(disk, seq, BoundaryTarget::at(Point(Complex(1.0, 0.0)))));
    CHECK_FALSE(
        sequence_converges_to(disk, seq, BoundaryTarget::at(Point(Complex(0.0, 1.0)))));

    const Domain strip = Domain::strip(0.0, 1.0);
    const auto march = strip_march(1.0, 0.5, 20);
    CHECK(sequence_converges_to(strip, march, BoundaryTarget::end(0, Complex(1.0, 0.0))));
    CHECK_FALSE(
        sequence_converges_to(strip, march, BoundaryTarget::end(1, Complex(-1.0, 0.0))));
}

TEST_CASE("divergence_check on separating sequences") {
    const auto e = DistanceEngine::make(Domain::disk());
    const EndTree tree = build_end_tree(Domain::disk(), 6);
    const auto xs = radial_disk(Complex(1.0, 0.0), 15);
    const auto ys = radial_disk(Complex(-1.0, 0.0), 15);

    const DivergenceReport rep = divergence_check(e, tree, xs, ys);
    CHECK(rep.divergent);
    CHECK(rep.monotone_tail);
    CHECK(rep.min_tail_pairs >= rep.threshold);
    REQUIRE(rep.diagonal.size() == xs.size());
    for (size_t i = 1; i < rep.diagonal.size(); ++i)
        CHECK(rep.diagonal[i] > rep.diagonal[i - 1]);

    // an out-of-reach threshold flips the verdict, not the data
    const DivergenceReport high = divergence_check(e, tree, xs, ys, 1e9);
    CHECK_FALSE(high.divergent);
    CHECK(high.diagonal == rep.diagonal);

    // sequences falling into the same target are rejected
    auto xs_fast = radial_disk(Complex(1.0, 0.0), 15);
    CHECK_THROWS_AS((void)divergence_check(e, tree, xs, xs_fast), input_error);
}

TEST_CASE("divergence_check separates the two strip ends") {
    const auto e = DistanceEngine::make(Domain::strip(0.0, 1.0));
    const EndTree tree = build_end_tree(Domain::strip(0.0, 1.0), 6);
    const DivergenceReport rep = divergence_check(e, tree, strip_march(1.0, 0.5, 15),
                                                  strip_march(-1.0, 0.5, 15));
    CHECK(rep.divergent);
    CHECK(rep.min_tail_pairs > 10.0);
}
