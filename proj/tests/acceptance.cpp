// Acceptance battery: every shipped claim gets one pass/fail line with its
// measured margin and runtime.  Exit status is the number of failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "horolab/compactification.hpp"
#include "horolab/dynamics.hpp"
#include "horolab/ends.hpp"
#include "horolab/engine.hpp"
#include "horolab/error.hpp"
#include "horolab/geodesy.hpp"
#include "horolab/horofunction.hpp"
#include "horolab/probes.hpp"

using namespace horolab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double disk_busemann(Complex sigma, Complex z) {
    return 0.5 * std::log(std::norm(sigma - z) / (1.0 - std::norm(z)));
}

Complex random_disk_point(std::mt19937_64& rng, double rmax) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(rmax * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

HorofunctionEstimate radial_estimate(const DistanceEngine& e, const Point& sigma,
                                     int terms = 40) {
    const auto seq = approach_sequence(e.domain(), BoundaryTarget::at(sigma),
                                       ApproachStyle::radial(), terms);
    return estimate_horofunction(e, e.domain().anchor(), seq);
}

// 1. radial estimates against the closed-form disk horofunction
Outcome disk_busemann_oracle() {
    const auto e = DistanceEngine::make(Domain::disk());
    const auto probes = probe_grid(e.domain());  // 64 interior probes
    double worst = 0.0;
    int checked = 0;
    for (Complex sigma : {Complex(1, 0), Complex(0, 1),
                          std::polar(1.0, std::numbers::pi / 5.0)}) {
        const auto est = radial_estimate(e, Point(sigma));
        if (!est.converged) return {false, "estimate failed to converge"};
        for (const Point& z : probes) {
            worst = std::max(worst,
                             std::abs(est.value_at(z) - disk_busemann(sigma, z[0])));
            ++checked;
        }
    }
    return {worst <= 1e-6,
            "max gap " + num(worst) + " over " + std::to_string(checked) + " probes"};
}

// 2. horoball membership against the tangent Euclidean disc
Outcome horoball_euclidean_geometry() {
    const auto e = DistanceEngine::make(Domain::disk());
    const auto est = radial_estimate(e, Point(Complex(1, 0)));
    const auto raster = probe_grid(e.domain(), 10000, 0.005);
    int misclassified = 0, banded = 0;
    for (double R : {0.25, 1.0, 4.0}) {
        const double center = 1.0 / (1.0 + R);
        const double rho = R / (1.0 + R);
        for (const Point& z : raster) {
            const double gap = std::abs(z[0] - Complex(center, 0.0));
            if (std::abs(gap - rho) <= 1e-5) {
                ++banded;
                continue;
            }
            const Ternary verdict = horoball_contains(est, z, R);
            const Ternary want = gap < rho ? Ternary::True : Ternary::False;
            if (verdict != want) ++misclassified;
        }
    }
    return {misclassified == 0, std::to_string(misclassified) + " misclassified of " +
                                    std::to_string(3 * raster.size()) + " (" +
                                    std::to_string(banded) + " in the blind band)"};
}

// 3. additivity bounds on constructed quasi-geodesic triples
Outcome quasi_geodesic_triples() {
    const auto e = DistanceEngine::make(Domain::disk());
    std::mt19937_64 rng(2024);
    int violations = 0, triples = 0;
    double worst = 0.0;
    for (double eps : {0.1, 0.01}) {
        for (int path_i = 0; path_i < 20; ++path_i) {
            const Point a(random_disk_point(rng, 0.9)), b(random_disk_point(rng, 0.9));
            const PathSample q = quasi_geodesic(e, a, b, eps);
            std::uniform_int_distribution<size_t> pick(0, q.size() - 1);
            for (int t = 0; t < 50; ++t) {
                std::array<size_t, 3> idx{pick(rng), pick(rng), pick(rng)};
                std::sort(idx.begin(), idx.end());
                const Point &x = q.points[idx[0]], &y = q.points[idx[1]],
                            &z = q.points[idx[2]];
                const double through = e.distance(x, y) + e.distance(y, z);
                const double direct = e.distance(x, z);
                if (direct > through + 1e-9) ++violations;
                if (through > direct + 3.0 * eps + 1e-9) ++violations;
                worst = std::max(worst, through - direct - 3.0 * eps);
                ++triples;
            }
        }
    }
    return {violations == 0, std::to_string(violations) + " violations in " +
                                 std::to_string(triples) +
                                 " triples, worst slack excess " + num(worst)};
}

// 4. product growth along shared rays plus the distance lower bound
Outcome gromov_product_bounds() {
    const auto e = DistanceEngine::make(Domain::disk());
    const Point pole(Complex(0, 0));
    const BoundaryTarget one = BoundaryTarget::at(Point(Complex(1, 0)));
    const auto xs = approach_sequence(e.domain(), one, ApproachStyle::radial(), 20);
    const auto ys = approach_sequence(e.domain(), one, ApproachStyle::tangential(0.3), 20);
    const double deep =
        gromov_product(e, pole, xs.points.back(), ys.points.back());
    if (deep <= 5.0) return {false, "shared-target product only " + num(deep)};

    std::mt19937_64 rng(404);
    int violations = 0;
    double slack = 1e300;
    for (int i = 0; i < 1000; ++i) {
        const Point p(random_disk_point(rng, 0.9)), x(random_disk_point(rng, 0.9)),
            y(random_disk_point(rng, 0.9)), z(random_disk_point(rng, 0.9));
        const double g = gromov_product(e, p, x, y);
        const double phix = e.distance(z, x) - e.distance(p, x);
        const double phiy = e.distance(z, y) - e.distance(p, y);
        const double floor_value = -0.5 * (phix + phiy);
        if (g < floor_value - 1e-9) ++violations;
        slack = std::min(slack, g - floor_value);
    }
    return {violations == 0, "ray product " + num(deep) + ", " +
                                 std::to_string(violations) +
                                 " bound violations in 1000 quadruples (min slack " +
                                 num(slack) + ")"};
}

// 5. deep_point lands below every requested level
Outcome deep_point_levels() {
    const auto disk = DistanceEngine::make(Domain::disk());
    const auto ed = radial_estimate(disk, Point(Complex(1, 0)));
    const auto bidisc = DistanceEngine::make(Domain::polydisc(2));
    const auto eb = radial_estimate(bidisc, Point(Complex(1, 0), Complex(1, 0)));

    double worst_margin = 1e300;
    for (double level : {-1.0, -3.0, -6.0}) {
        const double hd = ed.value_at(deep_point(ed, level));
        const double hb = eb.value_at(deep_point(eb, level));
        if (hd >= level || hb >= level)
            return {false, "level " + num(level) + " missed: disk " + num(hd) +
                               ", bidisc " + num(hb)};
        worst_margin = std::min({worst_margin, level - hd, level - hb});
    }
    return {true, "all levels cleared, slimmest margin " + num(worst_margin)};
}

// 6. big/small horosphere membership decomposes over the family
Outcome horosphere_decomposition() {
    const auto e = DistanceEngine::make(Domain::polydisc(2));
    const Point pole(Complex(0, 0), Complex(0, 0));
    const BoundaryTarget corner = BoundaryTarget::at(Point(Complex(1, 0), Complex(1, 0)));
    const std::vector<ApproachStyle> styles{
        ApproachStyle::radial(), ApproachStyle::skew(1, 2), ApproachStyle::skew(2, 1)};
    const auto family = family_estimates(e, pole, corner, styles);

    int identity_breaks = 0;
    for (const Point& z : probe_grid(e.domain(), 500)) {
        const HorosphereReport hs = horosphere_membership(family, z, 1.0);
        int truths = 0, falses = 0, open = 0;
        for (Ternary v : hs.member_verdict) {
            if (v == Ternary::True) ++truths;
            if (v == Ternary::False) ++falses;
            if (v == Ternary::Indeterminate) ++open;
        }
        const Ternary want_big = truths > 0 ? Ternary::True
                                 : open > 0 ? Ternary::Indeterminate
                                            : Ternary::False;
        const Ternary want_small = falses > 0 ? Ternary::False
                                   : open > 0 ? Ternary::Indeterminate
                                              : Ternary::True;
        if (hs.in_big != want_big || hs.in_small != want_small) ++identity_breaks;
    }

    const HorosphereReport probe =
        horosphere_membership(family, Point(Complex(0, 0), Complex(0.5, 0)), 1.0);
    const bool probe_ok =
        probe.in_big == Ternary::True && probe.in_small == Ternary::False;
    return {identity_breaks == 0 && probe_ok,
            std::to_string(identity_breaks) +
                " identity breaks in 500 samples; probe split " +
                std::string(to_string(probe.in_big)) + "/" +
                std::string(to_string(probe.in_small))};
}

// 7. fibers: split on the bidisc, singleton on the disk
Outcome fiber_splitting() {
    const auto bidisc = DistanceEngine::make(Domain::polydisc(2));
    const FiberSample split = fiber_sample(
        bidisc, Point(Complex(0, 0), Complex(0, 0)),
        BoundaryTarget::at(Point(Complex(1, 0), Complex(1, 0))),
        {ApproachStyle::radial(), ApproachStyle::skew(1, 2)});
    const Point probe(Complex(0, 0), Complex(0.5, 0));
    const double gap = std::abs(split.estimates[0].value_at(probe) -
                                split.estimates[1].value_at(probe));
    const double want = 0.549306144334;
    if (std::abs(gap - want) > 1e-4)
        return {false, "bidisc probe gap " + num(gap) + ", expected " + num(want)};

    const auto disk = DistanceEngine::make(Domain::disk());
    const double quarter_turn = std::numbers::pi / 4.0;
    const FiberSample same = fiber_sample(
        disk, Point(Complex(0, 0)), BoundaryTarget::at(Point(Complex(1, 0))),
        {ApproachStyle::radial(), ApproachStyle::tangential(quarter_turn),
         ApproachStyle::tangential(-quarter_turn)});
    double worst = 0.0;
    for (size_t i = 0; i < same.estimates.size(); ++i)
        for (size_t j = i + 1; j < same.estimates.size(); ++j)
            worst = std::max(worst, same.gaps[i][j]);
    return {worst <= 1e-5, "bidisc probe gap " + num(gap) +
                               "; disk pairwise sup gap " + num(worst)};
}

// 8. horoballs are quasi-convex and star-shaped toward the target
Outcome horoball_convexity() {
    // the estimate borrows the engine, so both stay in one scope per case
    auto run_case = [](const char* tag, const Domain& dom,
                       const Point& sigma) -> std::optional<std::string> {
        const auto e = DistanceEngine::make(dom);
        const auto est = radial_estimate(e, sigma);
        for (double R : {0.5, 1.0, 2.0}) {
            const ConvexityReport rep = convexity_check(e, est, R, 200);
            if (!rep.ok())
                return std::string(tag) + " R=" + num(R) + ": " +
                       std::to_string(rep.chord_violations) + " chord + " +
                       std::to_string(rep.ray_violations) + " ray violations";
        }
        return std::nullopt;
    };

    std::string tally;
    const std::array<std::tuple<const char*, Domain, Point>, 3> cases{
        std::tuple{"disk", Domain::disk(), Point(Complex(1, 0))},
        std::tuple{"bidisc", Domain::polydisc(2), Point(Complex(1, 0), Complex(1, 0))},
        std::tuple{"square", Domain::conformal_square(2.0), Point(Complex(1, 0))}};
    for (const auto& [tag, dom, sigma] : cases) {
        if (auto fail = run_case(tag, dom, sigma)) return {false, *fail};
        tally += std::string(tag) + " ";
    }
    return {true, "0 violations across " + tally + "at R in {0.5, 1, 2}"};
}

// 9. iterated self-maps respect the Wolff horoball schedule
Outcome wolff_invariance() {
    const auto halfway = HolomorphicMap::affine(Complex(0.5, 0), Complex(0.5, 0));
    std::vector<int> powers;
    for (int n = 1; n <= 10; ++n) powers.push_back(n);

    const auto disk = DistanceEngine::make(Domain::disk());
    const WolffData wd = wolff_data(disk, halfway, Point(Complex(0, 0)));
    if (!same_target(wd.x, BoundaryTarget::at(Point(Complex(1, 0)))))
        return {false, "disk target off +1"};
    const WolffInclusionReport rd = wolff_inclusion_check(
        disk, halfway, wd, {0.5, 1.0, 2.0}, 100, powers,
        {ApproachStyle::radial(), ApproachStyle::tangential(0.4),
         ApproachStyle::tangential(-0.4)});

    const auto pair = HolomorphicMap::coordinatewise({halfway, halfway});
    const auto bidisc = DistanceEngine::make(Domain::polydisc(2));
    const WolffData wb = wolff_data(bidisc, pair, Point(Complex(0, 0), Complex(0, 0)));
    if (!same_target(wb.x, BoundaryTarget::at(Point(Complex(1, 0), Complex(1, 0)))))
        return {false, "bidisc target off (+1,+1)"};
    const WolffInclusionReport rb = wolff_inclusion_check(
        bidisc, pair, wb, {0.5, 1.0, 2.0}, 100, powers,
        {ApproachStyle::radial(), ApproachStyle::skew(1, 2), ApproachStyle::skew(2, 1)});

    const bool ok = rd.violations == 0 && rb.violations == 0 &&
                    rd.one_step_drop_max <= -0.34 && rb.one_step_drop_max <= -0.34;
    return {ok, "violations " + std::to_string(rd.violations) + "+" +
                    std::to_string(rb.violations) + ", one-step drop peaks " +
                    num(rd.one_step_drop_max) + " / " + num(rb.one_step_drop_max)};
}

// 10. iteration verdicts: contraction, rotation, end escape, automorphism
Outcome denjoy_wolff_verdicts() {
    const auto disk = DistanceEngine::make(Domain::disk());
    const std::vector<Point> seeds{Point(Complex(0, 0)), Point(Complex(-0.5, 0)),
                                   Point(Complex(0.3, 0.2))};

    const auto halfway = HolomorphicMap::affine(Complex(0.5, 0), Complex(0.5, 0));
    const DenjoyWolffReport a = denjoy_wolff(disk, halfway, seeds, 60);
    if (a.verdict != DenjoyWolffReport::Verdict::BoundaryLimit ||
        !same_target(a.y, BoundaryTarget::at(Point(Complex(1, 0)))))
        return {false, "contraction verdict " + std::string(to_string(a.verdict))};
    if (a.spreads.size() < 41 || a.spreads[40] >= 1e-6)
        return {false, "probe-ball spread at step 40 is " +
                           num(a.spreads.size() < 41 ? -1.0 : a.spreads[40])};

    const DenjoyWolffReport b =
        denjoy_wolff(disk, HolomorphicMap::mobius(Complex(0, 0), 0.7), seeds, 60);
    if (b.verdict != DenjoyWolffReport::Verdict::RelativelyCompact)
        return {false, "rotation verdict " + std::string(to_string(b.verdict))};

    const auto strip = DistanceEngine::make(Domain::strip(0.0, 1.0));
    const DenjoyWolffReport c = denjoy_wolff(
        strip, HolomorphicMap::disk_conjugate(halfway),
        {Point(Complex(0, 0.5)), Point(Complex(-1, 0.25)), Point(Complex(0.5, 0.75))}, 80);
    if (c.verdict != DenjoyWolffReport::Verdict::BoundaryLimit ||
        c.y.kind != BoundaryTarget::Kind::End || c.y.direction.real() <= 0.0)
        return {false, "strip escape verdict " + std::string(to_string(c.verdict))};

    const DenjoyWolffReport d =
        denjoy_wolff(disk, HolomorphicMap::mobius(Complex(0.5, 0)), seeds, 120);
    if (d.verdict != DenjoyWolffReport::Verdict::BoundaryLimit ||
        d.y.kind != BoundaryTarget::Kind::BoundaryPoint)
        return {false, "automorphism verdict " + std::string(to_string(d.verdict))};
    const double off = d.y.point.sup_dist(Point(Complex(1, 0)));
    if (off > 1e-6) return {false, "automorphism limit off +1 by " + num(off)};

    return {true, "contraction spread " + num(a.spreads[40]) +
                      " at step 40; automorphism limit off by " + num(off)};
}

// 11. distances between sequences escaping to different targets blow up
Outcome escaping_pair_divergence() {
    const auto disk = DistanceEngine::make(Domain::disk());
    const EndTree disk_tree = build_end_tree(Domain::disk(), 6);
    std::vector<Point> xs, ys;
    for (int n = 1; n <= 15; ++n) {
        xs.emplace_back(Complex(1.0 - std::ldexp(1.0, -n), 0.0));
        ys.emplace_back(Complex(std::ldexp(1.0, -n) - 1.0, 0.0));
    }
    const DivergenceReport rd = divergence_check(disk, disk_tree, xs, ys);

    const auto strip = DistanceEngine::make(Domain::strip(0.0, 1.0));
    const EndTree strip_tree = build_end_tree(Domain::strip(0.0, 1.0), 6);
    std::vector<Point> rs, ls;
    for (int n = 1; n <= 15; ++n) {
        rs.emplace_back(Complex(static_cast<double>(n), 0.5));
        ls.emplace_back(Complex(static_cast<double>(-n), 0.5));
    }
    const DivergenceReport rs_rep = divergence_check(strip, strip_tree, rs, ls);

    // pinned claim: monotone growth past 10 by tail index 15, plus the
    // module's own liminf verdict at its default schedule
    const bool ok = rd.divergent && rd.monotone_tail && rd.diagonal.back() > 10.0 &&
                    rs_rep.divergent && rs_rep.monotone_tail &&
                    rs_rep.diagonal.back() > 10.0;
    return {ok, "deepest diagonals " + num(rd.diagonal.back()) + " (disk), " +
                    num(rs_rep.diagonal.back()) + " (strip)"};
}

// 12. end counts and escaping-sequence classification
Outcome end_census() {
    if (!build_end_tree(Domain::disk(), 6).ends().empty()) return {false, "disk ends != 0"};
    if (!build_end_tree(Domain::polydisc(2), 6).ends().empty())
        return {false, "bidisc ends != 0"};
    const EndTree strip_tree = build_end_tree(Domain::strip(0.0, 1.0), 6);
    if (strip_tree.ends().size() != 2) return {false, "strip ends != 2"};
    const EndTree hp_tree = build_end_tree(Domain::half_plane(), 6);
    if (hp_tree.ends().size() != 1) return {false, "half plane ends != 1"};

    const EndTree disk_tree = build_end_tree(Domain::disk(), 6);
    std::vector<Point> radial;
    for (int n = 1; n <= 20; ++n)
        radial.emplace_back(Complex(1.0 - std::ldexp(1.0, -n), 0.0));
    const LimitClass lc1 = classify_limit(disk_tree, radial);
    if (lc1.kind != LimitClass::Kind::Boundary ||
        !same_target(lc1.target, BoundaryTarget::at(Point(Complex(1, 0)))))
        return {false, "disk radial misclassified: " + lc1.detail};

    const EndTree bidisc_tree = build_end_tree(Domain::polydisc(2), 6);
    std::vector<Point> corner;
    for (int n = 1; n <= 20; ++n) {
        const double r = 1.0 - std::ldexp(1.0, -n);
        corner.emplace_back(Complex(r, 0.0), Complex(r, 0.0));
    }
    const LimitClass lc2 = classify_limit(bidisc_tree, corner);
    if (lc2.kind != LimitClass::Kind::Boundary ||
        !same_target(lc2.target, BoundaryTarget::at(Point(Complex(1, 0), Complex(1, 0)))))
        return {false, "bidisc radial misclassified: " + lc2.detail};

    std::vector<Point> right, left, up;
    for (int n = 1; n <= 20; ++n) {
        right.emplace_back(Complex(static_cast<double>(n), 0.5));
        left.emplace_back(Complex(static_cast<double>(-n), 0.25));
    }
    for (int n = 0; n <= 8; ++n) up.emplace_back(Complex(0.0, std::ldexp(1.0, n)));
    const LimitClass lr = classify_limit(strip_tree, right);
    const LimitClass ll = classify_limit(strip_tree, left);
    const LimitClass lu = classify_limit(hp_tree, up);
    if (lr.kind != LimitClass::Kind::End || lr.target.direction.real() <= 0.9)
        return {false, "strip right march misclassified"};
    if (ll.kind != LimitClass::Kind::End || ll.target.direction.real() >= -0.9)
        return {false, "strip left march misclassified"};
    if (lu.kind != LimitClass::Kind::End)
        return {false, "half plane ascent misclassified"};
    return {true, "census 0/0/2/1 and all five sequences classified"};
}

// 13. the bundled verification battery replays byte-identically
Outcome deterministic_replay() {
#ifndef HOROLAB_CLI_PATH
    return {false, "command line tool was not built"};
#else
    auto capture = [](const std::string& cmd, int& rc) -> std::string {
        std::string out;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) {
            rc = -1;
            return out;
        }
        char buf[4096];
        size_t got;
        while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
        rc = pclose(pipe);
        return out;
    };
    const std::string cmd = std::string("\"") + HOROLAB_CLI_PATH + "\" verify all 2>&1";
    int rc1 = 0, rc2 = 0;
    const auto t0 = std::chrono::steady_clock::now();
    const std::string first = capture(cmd, rc1);
    const auto t1 = std::chrono::steady_clock::now();
    const std::string second = capture(cmd, rc2);
    const double secs = std::chrono::duration<double>(t1 - t0).count();

    if (rc1 != 0 || rc2 != 0)
        return {false, "verify exited " + std::to_string(rc1) + " / " +
                           std::to_string(rc2)};
    if (first != second) return {false, "replay output differs between runs"};
    if (secs >= 180.0) return {false, "battery took " + num(secs) + "s"};
    if (first.empty()) return {false, "battery produced no output"};
    return {true, "byte-identical replay, battery wall time " + num(secs) + "s"};
#endif
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;  // 0 = untimed
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"disk-busemann-oracle", 1.0, disk_busemann_oracle},
        {"horoball-euclidean-geometry", 5.0, horoball_euclidean_geometry},
        {"quasi-geodesic-triples", 5.0, quasi_geodesic_triples},
        {"gromov-product-bounds", 2.0, gromov_product_bounds},
        {"deep-point-levels", 2.0, deep_point_levels},
        {"horosphere-decomposition", 10.0, horosphere_decomposition},
        {"fiber-splitting", 0.0, fiber_splitting},
        {"horoball-convexity", 0.0, horoball_convexity},
        {"wolff-invariance", 30.0, wolff_invariance},
        {"denjoy-wolff-verdicts", 0.0, denjoy_wolff_verdicts},
        {"escaping-pair-divergence", 0.0, escaping_pair_divergence},
        {"end-census", 0.0, end_census},
        {"deterministic-replay", 180.0, deterministic_replay},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            out = c.run();
        } catch (const std::exception& ex) {
            out = {false, std::string("threw: ") + ex.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (out.pass && c.budget_s > 0.0 && secs > c.budget_s) {
            out.pass = false;
            out.detail += "; over budget";
        }
        std::string timing = " [" + num(secs) + "s";
        if (c.budget_s > 0.0) timing += ", budget " + num(c.budget_s) + "s";
        timing += "]";
        std::printf("criterion %02zu %s %s: %s%s\n", i + 1, out.pass ? "PASS" : "FAIL",
                    c.name, out.detail.c_str(), timing.c_str());
        if (!out.pass) ++failures;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures;
}
