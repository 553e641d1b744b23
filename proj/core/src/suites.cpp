#include "horolab/suites.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <fmt/core.h>

#include "horolab/chain.hpp"
#include "horolab/compactification.hpp"
#include "horolab/dynamics.hpp"
#include "horolab/ends.hpp"
#include "horolab/engine.hpp"
#include "horolab/error.hpp"
#include "horolab/geodesy.hpp"
#include "horolab/holomap.hpp"
#include "horolab/horofunction.hpp"

namespace horolab {

namespace {

constexpr double kPi = std::numbers::pi;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string num(double v) { return fmt::format("{:.12g}", v); }

void run_check(SuiteReport& rep, const char* name,
               const std::function<bool(std::string&)>& body) {
    SuiteCheck c;
    c.name = name;
    try {
        c.pass = body(c.detail);
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string("raised: ") + e.what();
    }
    rep.checks.push_back(std::move(c));
}

// closed forms used as cross-checks; they share no code with the engines

double disk_busemann(Complex sigma, Complex z) {
    // pole 0
    return 0.5 * std::log(std::norm(sigma - z) / (1.0 - std::norm(z)));
}

double strip_end_busemann(Complex z, Complex p, double a, double b, int side) {
    const double w = b - a;
    const double tz = (z.imag() - a) / w;
    const double tp = (p.imag() - a) / w;
    const double drift = (side > 0 ? 1.0 : -1.0) * kPi / (2.0 * w);
    return -drift * (z.real() - p.real()) +
           0.5 * std::log(std::sin(kPi * tp) / std::sin(kPi * tz));
}

double strip_unit_distance_reference(Complex z, Complex w) {
    // sinh form on {0 < Im < 1}
    const Complex s1 = std::sinh(0.5 * kPi * (z - w));
    const Complex s2 = std::sinh(0.5 * kPi * (z - std::conj(w)));
    const double s = std::abs(s1) + std::abs(s2);
    return 0.5 * std::log(s * s / (std::sin(kPi * z.imag()) * std::sin(kPi * w.imag())));
}

SuiteReport distances_suite() {
    SuiteReport rep{"distances", {}, };
    const DistanceEngine disk = DistanceEngine::make(Domain::disk());

    run_check(rep, "disk-atanh-pin", [&](std::string& d) {
        const double got = disk.distance(Point(Complex(0, 0)), Point(Complex(0.5, 0)));
        d = "k(0, 0.5) = " + num(got);
        return near(got, std::atanh(0.5), 1e-13);
    });

    run_check(rep, "disk-metric-axioms", [&](std::string& d) {
        const Point pts[] = {Point(Complex(0, 0)),      Point(Complex(0.5, 0)),
                             Point(Complex(0, 0.3)),    Point(Complex(-0.2, 0.4)),
                             Point(Complex(0.9, 0)),    Point(Complex(-0.7, -0.2))};
        double worst_sym = 0.0, worst_tri = 0.0;
        for (const Point& a : pts) {
            if (disk.distance(a, a) != 0.0) {
                d = "k(z, z) not exactly zero";
                return false;
            }
            for (const Point& b : pts) {
                worst_sym = std::max(worst_sym,
                                     std::abs(disk.distance(a, b) - disk.distance(b, a)));
                for (const Point& c : pts)
                    worst_tri = std::max(worst_tri, disk.distance(a, c) -
                                                        disk.distance(a, b) -
                                                        disk.distance(b, c));
            }
        }
        d = "sym " + num(worst_sym) + ", triangle excess " + num(worst_tri);
        return worst_sym <= 1e-14 && worst_tri <= 1e-12;
    });

    run_check(rep, "half-plane-pin", [&](std::string& d) {
        const DistanceEngine hp = DistanceEngine::make(Domain::half_plane());
        const double got = hp.distance(Point(Complex(0, 1)), Point(Complex(0, 2)));
        d = "k(i, 2i) = " + num(got);
        return near(got, 0.5 * std::log(2.0), 1e-13);
    });

    run_check(rep, "strip-chart-consistency", [&](std::string& d) {
        const DistanceEngine st = DistanceEngine::make(Domain::strip(0.0, 1.0));
        const DiskChart* chart = st.chart();
        if (chart == nullptr) {
            d = "strip engine has no chart";
            return false;
        }
        const Complex pairs[][2] = {{Complex(0, 0.5), Complex(0.3, 0.8)},
                                    {Complex(-1, 0.5), Complex(1, 0.2)},
                                    {Complex(0.2, 0.1), Complex(-0.4, 0.9)}};
        double worst = 0.0;
        for (const auto& pr : pairs) {
            const double direct = st.distance(Point(pr[0]), Point(pr[1]));
            const double charted =
                disk_distance(chart->to_disk(pr[0]), chart->to_disk(pr[1]));
            worst = std::max(worst, std::abs(direct - charted));
        }
        d = "max |direct - charted| = " + num(worst);
        return worst <= 1e-12;
    });

    run_check(rep, "strip-long-range", [&](std::string& d) {
        // sinh(20 pi) + cosh(20 pi) collapses to e^{20 pi}: the distance is 20 pi
        const DistanceEngine st = DistanceEngine::make(Domain::strip(0.0, 1.0));
        const double got = st.distance(Point(Complex(0, 0.5)), Point(Complex(40, 0.5)));
        d = "k(i/2, 40 + i/2) = " + num(got);
        return near(got, 20.0 * kPi, 1e-9);
    });

    run_check(rep, "ball-radial-pin", [&](std::string& d) {
        const DistanceEngine ball = DistanceEngine::make(Domain::ball(2));
        const double got =
            ball.distance(Point(Complex(0, 0), Complex(0, 0)),
                          Point(Complex(0.5, 0), Complex(0, 0)));
        d = "k(0, (0.5, 0)) = " + num(got);
        return near(got, std::atanh(0.5), 1e-13);
    });

    run_check(rep, "ball-swap-invariance", [&](std::string& d) {
        const DistanceEngine ball = DistanceEngine::make(Domain::ball(2));
        const Point z(Complex(0.2, 0.1), Complex(-0.3, 0.0));
        const Point w(Complex(0.0, -0.4), Complex(0.1, 0.2));
        const Point zs(z[1], z[0]), ws(w[1], w[0]);
        const double gap = std::abs(ball.distance(z, w) - ball.distance(zs, ws));
        d = "coordinate swap gap = " + num(gap);
        return gap <= 1e-13;
    });

    run_check(rep, "bidisc-max-formula", [&](std::string& d) {
        const DistanceEngine bd = DistanceEngine::make(Domain::polydisc(2));
        const double got = bd.distance(Point(Complex(0, 0), Complex(0, 0)),
                                       Point(Complex(0.5, 0), Complex(0.3, 0)));
        d = "k = " + num(got);
        return near(got, std::max(std::atanh(0.5), std::atanh(0.3)), 1e-13);
    });

    run_check(rep, "product-max-formula", [&](std::string& d) {
        std::vector<Domain> fs;
        fs.push_back(Domain::disk());
        fs.push_back(Domain::strip(0.0, 1.0));
        const DistanceEngine prod = DistanceEngine::make(Domain::product(std::move(fs)));
        const Point z(Complex(0.5, 0), Complex(0, 0.5));
        const Point w(Complex(0, 0), Complex(2, 0.5));
        const double got = prod.distance(z, w);
        const double want =
            std::max(std::atanh(0.5), strip_unit_distance_reference(z[1], w[1]));
        d = "k = " + num(got) + ", reference " + num(want);
        return near(got, want, 1e-12);
    });

    run_check(rep, "normalization-pin", [&](std::string& d) {
        // metric |dz| / (1 - |z|^2): unit speed at the origin
        const Interval k0 = disk.infinitesimal(Point(Complex(0, 0)), Point(Complex(1, 0)));
        const Interval k5 = disk.infinitesimal(Point(Complex(0.5, 0)), Point(Complex(1, 0)));
        d = "kappa(0) = " + num(k0.mid()) + ", kappa(0.5) = " + num(k5.mid());
        return near(k0.mid(), 1.0, 1e-13) && near(k5.mid(), 1.0 / 0.75, 1e-13);
    });

    return rep;
}

SuiteReport geodesy_suite() {
    SuiteReport rep{"geodesy", {}};
    const DistanceEngine disk = DistanceEngine::make(Domain::disk());
    const Point o(Complex(0, 0));
    const Point far(Complex(0.9, 0));

    run_check(rep, "radial-arclength", [&](std::string& d) {
        const Point g = geodesic_point(disk, o, far, std::atanh(0.5));
        d = "gamma(atanh 1/2) = " + format_point(g);
        return std::abs(g[0] - Complex(0.5, 0)) <= 1e-12;
    });

    run_check(rep, "endpoint-pin", [&](std::string& d) {
        const PathSample path = geodesic(disk, Point(Complex(-0.6, 0)),
                                         Point(Complex(0, 0.7)), 16);
        d = fmt::format("{} samples", path.size());
        return path.points.front() == Point(Complex(-0.6, 0)) &&
               path.points.back() == Point(Complex(0, 0.7));
    });

    run_check(rep, "arclength-additivity", [&](std::string& d) {
        const Point a = geodesic_point(disk, o, far, 0.3);
        const Point b = geodesic_point(disk, o, far, 0.8);
        const double got = disk.distance(a, b);
        d = "k(gamma(0.3), gamma(0.8)) = " + num(got);
        return near(got, 0.5, 1e-10);
    });

    run_check(rep, "quasi-geodesic-verified", [&](std::string& d) {
        const PathSample path =
            quasi_geodesic(disk, Point(Complex(-0.6, 0)), Point(Complex(0, 0.7)), 0.25);
        const PairwiseCheck chk = verify_path(disk, path, 0.25);
        d = fmt::format("{} pairs, worst excess {}", chk.pairs_checked,
                        num(chk.worst_excess));
        return chk.ok();
    });

    run_check(rep, "strip-midpoint-split", [&](std::string& d) {
        const DistanceEngine st = DistanceEngine::make(Domain::strip(0.0, 1.0));
        const Point z(Complex(-1, 0.3)), w(Complex(2, 0.7));
        const double k = st.distance(z, w);
        const Point m = geodesic_point(st, z, w, 0.5 * k);
        const double gap = std::abs(st.distance(z, m) - 0.5 * k);
        d = "half split gap = " + num(gap);
        return gap <= 1e-9;
    });

    run_check(rep, "ball-midpoint-split", [&](std::string& d) {
        const DistanceEngine ball = DistanceEngine::make(Domain::ball(2));
        const Point z(Complex(0, 0), Complex(0, 0));
        const Point w(Complex(0.5, 0), Complex(0.3, 0));
        const double k = ball.distance(z, w);
        const Point m = geodesic_point(ball, z, w, 0.5 * k);
        const double gap = std::abs(ball.distance(z, m) - 0.5 * k);
        d = "half split gap = " + num(gap);
        return gap <= 1e-9;
    });

    run_check(rep, "gromov-product-center", [&](std::string& d) {
        const double zero = gromov_product(disk, o, Point(Complex(0.9, 0)),
                                           Point(Complex(-0.9, 0)));
        const double self = gromov_product(disk, o, Point(Complex(0.9, 0)),
                                           Point(Complex(0.9, 0)));
        d = "(x|-x) = " + num(zero) + ", (x|x) = " + num(self);
        return near(zero, 0.0, 1e-12) && near(self, std::atanh(0.9), 1e-12);
    });

    return rep;
}

SuiteReport horofunction_suite() {
    SuiteReport rep{"horofunction", {}};
    const DistanceEngine disk = DistanceEngine::make(Domain::disk());
    const Point pole(Complex(0, 0));
    const BoundaryTarget one = BoundaryTarget::at(Point(Complex(1, 0)));

    run_check(rep, "disk-radial-closed-form", [&](std::string& d) {
        const ApproachSequence seq =
            approach_sequence(disk.domain(), one, ApproachStyle::radial(), 40);
        const HorofunctionEstimate est = estimate_horofunction(disk, pole, seq);
        double worst = 0.0;
        for (std::size_t i = 0; i < est.probes.size(); ++i)
            worst = std::max(worst, std::abs(est.values[i] -
                                             disk_busemann(Complex(1, 0), est.probes[i][0])));
        d = "osc " + num(est.osc) + ", max formula gap " + num(worst);
        return est.converged && worst <= 1e-9 && est.value_at(pole) == 0.0;
    });

    run_check(rep, "half-plane-vertical", [&](std::string& d) {
        const DistanceEngine hp = DistanceEngine::make(Domain::half_plane());
        const BoundaryTarget up = BoundaryTarget::end(0, Complex(0, 1));
        const ApproachSequence seq =
            approach_sequence(hp.domain(), up, ApproachStyle::radial(), 40);
        const HorofunctionEstimate est =
            estimate_horofunction(hp, Point(Complex(0, 1)), seq);
        const double got = est.value_at(Point(Complex(0, 2)));
        d = "h(2i) = " + num(got);
        return est.converged && near(got, -0.5 * std::log(2.0), 1e-9);
    });

    run_check(rep, "strip-end-closed-form", [&](std::string& d) {
        const DistanceEngine st = DistanceEngine::make(Domain::strip(0.0, 1.0));
        const BoundaryTarget right = BoundaryTarget::end(0, Complex(1, 0));
        const ApproachSequence seq =
            approach_sequence(st.domain(), right, ApproachStyle::at_height(0.5), 40);
        const HorofunctionEstimate est =
            estimate_horofunction(st, Point(Complex(0, 0.5)), seq);
        const Complex probe(0.2, 0.3);
        const double got = est.value_at(Point(probe));
        const double want = strip_end_busemann(probe, Complex(0, 0.5), 0.0, 1.0, +1);
        d = "h(0.2 + 0.3i) = " + num(got) + ", closed form " + num(want);
        return est.converged && near(got, want, 1e-9);
    });

    run_check(rep, "horoball-tie-rule", [&](std::string& d) {
        const ApproachSequence seq =
            approach_sequence(disk.domain(), one, ApproachStyle::radial(), 40);
        const HorofunctionEstimate est = estimate_horofunction(disk, pole, seq);
        const Ternary at_pole = horoball_contains(est, pole, 1.0);
        const Ternary inside = horoball_contains(est, Point(Complex(0.5, 0)), 1.0);
        const Ternary outside = horoball_contains(est, Point(Complex(-0.5, 0)), 1.0);
        d = fmt::format("pole {}, 0.5 {}, -0.5 {}", to_string(at_pole),
                        to_string(inside), to_string(outside));
        return at_pole == Ternary::False && inside == Ternary::True &&
               outside == Ternary::False;
    });

    run_check(rep, "deep-point", [&](std::string& d) {
        const ApproachSequence seq =
            approach_sequence(disk.domain(), one, ApproachStyle::radial(), 40);
        const HorofunctionEstimate est = estimate_horofunction(disk, pole, seq);
        const Point z = deep_point(est, -1.0);
        const double h = est.value_at(z);
        d = "h(deep) = " + num(h);
        return h < -1.0;
    });

    run_check(rep, "strip-fiber-singleton", [&](std::string& d) {
        const DistanceEngine st = DistanceEngine::make(Domain::strip(0.0, 1.0));
        const BoundaryTarget right = BoundaryTarget::end(0, Complex(1, 0));
        const std::vector<ApproachStyle> styles = {ApproachStyle::at_height(0.3),
                                                   ApproachStyle::at_height(0.5),
                                                   ApproachStyle::at_height(0.7)};
        const FiberSample fs = fiber_sample(st, Point(Complex(0, 0.5)), right, styles);
        double worst = 0.0;
        bool all_identical = true;
        for (std::size_t i = 0; i < fs.verdicts.size(); ++i)
            for (std::size_t j = i + 1; j < fs.verdicts.size(); ++j) {
                all_identical =
                    all_identical && fs.verdicts[i][j] == Distinctness::Identical;
                worst = std::max(worst, fs.gaps[i][j]);
            }
        d = "max gap " + num(worst);
        return all_identical;
    });

    run_check(rep, "bidisc-fiber-distinct", [&](std::string& d) {
        const DistanceEngine bd = DistanceEngine::make(Domain::polydisc(2));
        const BoundaryTarget corner =
            BoundaryTarget::at(Point(Complex(1, 0), Complex(1, 0)));
        const std::vector<ApproachStyle> styles = {ApproachStyle::radial(),
                                                   ApproachStyle::skew(1, 2),
                                                   ApproachStyle::skew(2, 1)};
        const FiberSample fs = fiber_sample(bd, Point(Complex(0, 0), Complex(0, 0)),
                                            corner, styles);
        bool all_distinct = true;
        double least = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < fs.verdicts.size(); ++i)
            for (std::size_t j = i + 1; j < fs.verdicts.size(); ++j) {
                all_distinct = all_distinct && fs.verdicts[i][j] == Distinctness::Distinct;
                least = std::min(least, fs.gaps[i][j]);
            }
        d = "min gap " + num(least);
        return all_distinct;
    });

    run_check(rep, "bidisc-horosphere-split", [&](std::string& d) {
        const DistanceEngine bd = DistanceEngine::make(Domain::polydisc(2));
        const BoundaryTarget corner =
            BoundaryTarget::at(Point(Complex(1, 0), Complex(1, 0)));
        const std::vector<ApproachStyle> styles = {ApproachStyle::radial(),
                                                   ApproachStyle::skew(1, 2),
                                                   ApproachStyle::skew(2, 1)};
        const HorosphereReport hs = horosphere_membership(
            bd, Point(Complex(0, 0), Complex(0, 0)), corner,
            Point(Complex(0.4, 0), Complex(0.2, 0)), std::exp(-0.6), styles);
        d = fmt::format("big {}, small {}, witnesses {} / {}", to_string(hs.in_big),
                        to_string(hs.in_small), hs.witness_big, hs.witness_small);
        return hs.in_big == Ternary::True && hs.in_small == Ternary::False;
    });

    return rep;
}

SuiteReport ends_suite() {
    SuiteReport rep{"ends", {}};

    run_check(rep, "disk-no-ends", [&](std::string& d) {
        const EndTree tree = build_end_tree(Domain::disk(), 6);
        d = fmt::format("{} ends", tree.ends().size());
        return tree.ends().empty();
    });

    run_check(rep, "strip-two-ends", [&](std::string& d) {
        const EndTree tree = build_end_tree(Domain::strip(0.0, 1.0), 6);
        d = fmt::format("{} ends", tree.ends().size());
        if (tree.ends().size() != 2) return false;
        const double d0 = tree.ends()[0].direction.real();
        const double d1 = tree.ends()[1].direction.real();
        return d0 * d1 < 0.0;  // one left, one right
    });

    run_check(rep, "half-plane-one-end", [&](std::string& d) {
        const EndTree tree = build_end_tree(Domain::half_plane(), 6);
        d = fmt::format("{} ends", tree.ends().size());
        return tree.ends().size() == 1;
    });

    run_check(rep, "square-no-ends", [&](std::string& d) {
        const EndTree tree = build_end_tree(Domain::conformal_square(2.0), 6);
        d = fmt::format("{} ends", tree.ends().size());
        return tree.ends().empty();
    });

    run_check(rep, "bounded-2d-analytic", [&](std::string& d) {
        const EndTree tree = build_end_tree(Domain::polydisc(2), 6);
        d = fmt::format("{} ends", tree.ends().size());
        return tree.ends().empty();
    });

    run_check(rep, "classify-strip-escape", [&](std::string& d) {
        const EndTree tree = build_end_tree(Domain::strip(0.0, 1.0), 6);
        std::vector<Point> seq;
        for (int n = 1; n <= 12; ++n) seq.push_back(Point(Complex(n, 0.5)));
        const LimitClass cls = classify_limit(tree, seq);
        d = cls.detail;
        return cls.kind == LimitClass::Kind::End &&
               cls.target.direction.real() > 0.0;
    });

    run_check(rep, "classify-disk-boundary", [&](std::string& d) {
        const EndTree tree = build_end_tree(Domain::disk(), 6);
        std::vector<Point> seq;
        for (int n = 1; n <= 20; ++n)
            seq.push_back(Point(Complex(1.0 - std::ldexp(1.0, -n), 0)));
        const LimitClass cls = classify_limit(tree, seq);
        d = cls.detail;
        return cls.kind == LimitClass::Kind::Boundary &&
               std::abs(cls.target.point[0] - Complex(1, 0)) <= 1e-6;
    });

    run_check(rep, "opposite-ends-diverge", [&](std::string& d) {
        const DistanceEngine st = DistanceEngine::make(Domain::strip(0.0, 1.0));
        const EndTree tree = build_end_tree(Domain::strip(0.0, 1.0), 6);
        std::vector<Point> xs, ys;
        for (int n = 1; n <= 12; ++n) {
            xs.push_back(Point(Complex(n, 0.5)));
            ys.push_back(Point(Complex(-n, 0.5)));
        }
        const DivergenceReport div = divergence_check(st, tree, xs, ys, 5.0);
        d = "min tail distance " + num(div.min_tail_pairs);
        return div.divergent;
    });

    return rep;
}

SuiteReport compactification_suite() {
    SuiteReport rep{"compactification", {}};
    const DistanceEngine disk = DistanceEngine::make(Domain::disk());
    const Point pole(Complex(0, 0));

    run_check(rep, "matching-endpoints-diverge", [&](std::string& d) {
        // both endpoint sequences approach 1; deep geodesics must run away
        // from the pole at least as fast as the endpoint Gromov products
        std::vector<PathSample> fam;
        for (int n = 1; n <= 14; ++n) {
            const double r = 1.0 - std::ldexp(1.0, -n);
            const double th = std::ldexp(1.0, -n);
            const Point x(r * std::polar(1.0, th));
            const Point y(r * std::polar(1.0, -th));
            fam.push_back(geodesic(disk, x, y, 24));
        }
        const CompactificationReport rp = good_compactification_probe(disk, fam, pole);
        d = "endpoint gap " + num(rp.endpoint_gap) + ", deepest min " +
            num(rp.min_distances.back());
        return rp.endpoints_match && rp.claim_holds && rp.diverges;
    });

    run_check(rep, "opposite-endpoints-stay", [&](std::string& d) {
        // geodesics through the pole: min distance pinned at 0, no divergence
        std::vector<PathSample> fam;
        for (int n = 1; n <= 10; ++n) {
            const double r = 1.0 - std::ldexp(1.0, -n - 2);
            fam.push_back(geodesic(disk, Point(Complex(-r, 0)), Point(Complex(r, 0)), 24));
        }
        const CompactificationReport rp = good_compactification_probe(disk, fam, pole);
        d = "endpoint gap " + num(rp.endpoint_gap) + ", deepest min " +
            num(rp.min_distances.back());
        return !rp.endpoints_match && rp.claim_holds && !rp.diverges &&
               rp.min_distances.back() <= 1e-9;
    });

    return rep;
}

SuiteReport dynamics_suite() {
    SuiteReport rep{"dynamics", {}};
    const DistanceEngine disk = DistanceEngine::make(Domain::disk());
    const Point o(Complex(0, 0));
    const HolomorphicMap halfway = HolomorphicMap::affine(Complex(0.5, 0), Complex(0.5, 0));

    run_check(rep, "halfway-certificate", [&](std::string& d) {
        const MapCertificate cert = certify_self_map(disk, halfway);
        d = "margin " + num(cert.min_margin) + ", expansion " +
            num(cert.worst_expansion);
        return cert.ok;
    });

    run_check(rep, "expansion-rejected", [&](std::string& d) {
        const MapCertificate cert =
            certify_self_map(disk, HolomorphicMap::affine(Complex(2, 0), Complex(0, 0)));
        d = cert.detail;
        return !cert.ok;
    });

    run_check(rep, "halfway-orbit-saturates", [&](std::string& d) {
        const OrbitRecord rec = iterate(disk, halfway, o, 200);
        d = fmt::format("{} iterates, {}", rec.iterates.size(), rec.classification);
        return rec.saturated && rec.iterates.size() >= 50 && rec.iterates.size() <= 56 &&
               rec.limit.kind == LimitClass::Kind::Boundary &&
               std::abs(rec.limit.target.point[0] - Complex(1, 0)) <= 1e-6;
    });

    run_check(rep, "halfway-compactly-divergent", [&](std::string& d) {
        const DivergenceOutcome div = compact_divergence(
            disk, halfway, {o, Point(Complex(0, 0.3)), Point(Complex(-0.4, 0))});
        d = fmt::format("final indices {} {} {}", div.final_index[0], div.final_index[1],
                        div.final_index[2]);
        return div.verdict == DivergenceVerdict::CompactlyDivergent;
    });

    run_check(rep, "rotation-relatively-compact", [&](std::string& d) {
        const HolomorphicMap rot = HolomorphicMap::mobius(Complex(0, 0), 1.0);
        const DivergenceOutcome div =
            compact_divergence(disk, rot, {Point(Complex(0.5, 0))});
        const DenjoyWolffReport dw = denjoy_wolff(disk, rot, {Point(Complex(0.5, 0))});
        d = fmt::format("verdicts {} / {}", static_cast<int>(div.verdict),
                        to_string(dw.verdict));
        return div.verdict == DivergenceVerdict::RelativelyCompact &&
               dw.verdict == DenjoyWolffReport::Verdict::RelativelyCompact;
    });

    run_check(rep, "halfway-denjoy-wolff", [&](std::string& d) {
        const DenjoyWolffReport dw = denjoy_wolff(
            disk, halfway, {o, Point(Complex(0.2, 0.1)), Point(Complex(-0.4, 0))});
        d = fmt::format("{}, final spread {}", to_string(dw.verdict),
                        num(dw.final_spread));
        return dw.verdict == DenjoyWolffReport::Verdict::BoundaryLimit &&
               same_target(dw.y, BoundaryTarget::at(Point(Complex(1, 0)))) &&
               dw.spread_shrinks;
    });

    run_check(rep, "halfway-julia-bound", [&](std::string& d) {
        // one-step drop of the limit horofunction is at most -log(2)/2
        const WolffData wolff = wolff_data(disk, halfway, o);
        const std::vector<ApproachStyle> family = {ApproachStyle::radial(),
                                                   ApproachStyle::tangential(0.4),
                                                   ApproachStyle::tangential(-0.4)};
        const WolffInclusionReport incl = wolff_inclusion_check(
            disk, halfway, wolff, {1.0, 0.25}, 10, {1, 2, 5}, family);
        d = fmt::format("{} checks, drop range [{}, {}]", incl.checks,
                        num(incl.one_step_drop_min), num(incl.one_step_drop_max));
        return incl.ok() && incl.checks > 0 &&
               incl.one_step_drop_max <= -0.5 * std::log(2.0) + 1e-9;
    });

    run_check(rep, "automorphism-constant-drop", [&](std::string& d) {
        // hyperbolic disk automorphism: the drop is exactly -log(3)/2 everywhere
        const HolomorphicMap hyper = HolomorphicMap::mobius(Complex(0.5, 0));
        const InvarianceReport inv =
            invariant_horoball_check(disk, hyper, o, {1.0, 0.25}, 12, 7);
        d = fmt::format("drop range [{}, {}]", num(inv.drop_min), num(inv.drop_max));
        return inv.ok() && near(inv.drop_min, -0.5 * std::log(3.0), 1e-6) &&
               inv.drop_max - inv.drop_min <= 1e-6;
    });

    run_check(rep, "strip-conjugate-escape", [&](std::string& d) {
        const DistanceEngine st = DistanceEngine::make(Domain::strip(0.0, 1.0));
        const HolomorphicMap f = HolomorphicMap::disk_conjugate(halfway);
        const MapCertificate cert = certify_self_map(st, f);
        if (!cert.ok) {
            d = "certificate failed: " + cert.detail;
            return false;
        }
        const WolffData wolff = wolff_data(st, f, Point(Complex(0, 0.5)));
        d = fmt::format("target kind {}, xi osc {}",
                        wolff.x.kind == BoundaryTarget::Kind::End ? "end" : "point",
                        num(wolff.xi.osc));
        return wolff.x.kind == BoundaryTarget::Kind::End && wolff.xi.converged &&
               wolff.x.direction.real() > 0.0;
    });

    return rep;
}

SuiteReport chain_suite() {
    SuiteReport rep{"chain", {}};

    // the same square, once exact through the conformal chart and once as a
    // polygon fed to the grid engine
    const DistanceEngine exact = DistanceEngine::make(Domain::conformal_square(2.0));
    const std::vector<Complex> vs = {Complex(1, -1), Complex(1, 0),  Complex(1, 1),
                                     Complex(0, 1),  Complex(-1, 1), Complex(-1, 0),
                                     Complex(-1, -1), Complex(0, -1)};
    const DistanceEngine grid = DistanceEngine::make(Domain::convex_polygon(vs));
    const Point z(Complex(0, 0)), w(Complex(0.5, 0));

    run_check(rep, "interval-brackets-truth", [&](std::string& d) {
        // the polygon bracket is a working estimate with lo pinned near hi/2
        // by the convex metric sandwich; it must still straddle the exact value
        const double truth = exact.distance(z, w);
        const Interval iv = grid.distance_interval(z, w);
        d = fmt::format("exact {}, interval [{}, {}]", num(truth), num(iv.lo),
                        num(iv.hi));
        return iv.lo <= truth && truth <= iv.hi && iv.lo > 0.0 &&
               iv.lo <= 0.5 * iv.hi + 1e-12;
    });

    run_check(rep, "disk-chain-pin", [&](std::string& d) {
        // the same solver on the disk, where edge weights are exact: the
        // bracket tightens around the closed-form value
        const DistanceEngine fine =
            DistanceEngine::make(Domain::disk(), ChainParams{0.01, 0.009, 1e300});
        const Interval iv = chain_distance(fine, z, w, 0.1);
        d = fmt::format("interval [{}, {}]", num(iv.lo), num(iv.hi));
        return iv.lo <= std::atanh(0.5) && std::atanh(0.5) <= iv.hi &&
               iv.width() < 0.1;
    });

    run_check(rep, "deep-pair-floor", [&](std::string& d) {
        // boundary-gap lower bound (1/2)|log delta(z)/delta(w)| for convex
        // domains; the upper estimate must clear it
        const Interval iv = grid.distance_interval(z, Point(Complex(0.9, 0)));
        const double floor = 0.5 * std::log(10.0);
        d = fmt::format("interval [{}, {}], floor {}", num(iv.lo), num(iv.hi),
                        num(floor));
        return iv.hi >= floor - 1e-9 && iv.lo <= 0.5 * iv.hi + 1e-12;
    });

    run_check(rep, "interval-symmetry", [&](std::string& d) {
        const Interval ab = grid.distance_interval(z, w);
        const Interval ba = grid.distance_interval(w, z);
        d = fmt::format("gap lo {}, hi {}", num(std::abs(ab.lo - ba.lo)),
                        num(std::abs(ab.hi - ba.hi)));
        return std::abs(ab.lo - ba.lo) <= 1e-12 && std::abs(ab.hi - ba.hi) <= 1e-12;
    });

    run_check(rep, "diagonal-zero", [&](std::string& d) {
        const Interval iv = grid.distance_interval(z, z);
        d = fmt::format("[{}, {}]", num(iv.lo), num(iv.hi));
        return iv.lo == 0.0 && iv.hi == 0.0;
    });

    return rep;
}

SuiteReport examples_suite() {
    SuiteReport rep{"examples", {}};
    const DistanceEngine disk = DistanceEngine::make(Domain::disk());
    const Point o(Complex(0, 0));

    run_check(rep, "disk-pair", [&](std::string& d) {
        const double got = disk.distance(o, Point(Complex(0.5, 0)));
        d = "k(0, 0.5) = " + num(got);
        return near(got, std::atanh(0.5), 1e-13);
    });

    run_check(rep, "half-plane-pair", [&](std::string& d) {
        const DistanceEngine hp = DistanceEngine::make(Domain::half_plane());
        const double got = hp.distance(Point(Complex(0, 1)), Point(Complex(0, 2)));
        d = "k(i, 2i) = " + num(got);
        return near(got, 0.5 * std::log(2.0), 1e-13);
    });

    run_check(rep, "strip-long-pair", [&](std::string& d) {
        const DistanceEngine st = DistanceEngine::make(Domain::strip(0.0, 1.0));
        const double got = st.distance(Point(Complex(0, 0.5)), Point(Complex(40, 0.5)));
        d = "k = " + num(got) + " (20 pi)";
        return near(got, 20.0 * kPi, 1e-9);
    });

    run_check(rep, "gromov-antipodal", [&](std::string& d) {
        const double got =
            gromov_product(disk, o, Point(Complex(0.9, 0)), Point(Complex(-0.9, 0)));
        d = "(0.9 | -0.9)_0 = " + num(got);
        return near(got, 0.0, 1e-12);
    });

    run_check(rep, "bidisc-skew-terms", [&](std::string& d) {
        const BoundaryTarget corner =
            BoundaryTarget::at(Point(Complex(1, 0), Complex(1, 0)));
        const ApproachSequence seq = approach_sequence(
            Domain::polydisc(2), corner, ApproachStyle::skew(1, 2), 3);
        d = format_point(seq.points[0]) + " " + format_point(seq.points[1]);
        return seq.points[0] == Point(Complex(0.5, 0), Complex(0.75, 0)) &&
               seq.points[1] == Point(Complex(0.75, 0), Complex(0.9375, 0));
    });

    run_check(rep, "strip-fiber-value", [&](std::string& d) {
        const DistanceEngine st = DistanceEngine::make(Domain::strip(0.0, 1.0));
        const BoundaryTarget right = BoundaryTarget::end(0, Complex(1, 0));
        const std::vector<ApproachStyle> styles = {ApproachStyle::at_height(0.3),
                                                   ApproachStyle::at_height(0.5),
                                                   ApproachStyle::at_height(0.7)};
        const FiberSample fs = fiber_sample(st, Point(Complex(0, 0.5)), right, styles);
        const Complex probe(0.2, 0.3);
        const double want = strip_end_busemann(probe, Complex(0, 0.5), 0.0, 1.0, +1);
        double worst = 0.0;
        for (const HorofunctionEstimate& est : fs.estimates)
            worst = std::max(worst, std::abs(est.value_at(Point(probe)) - want));
        d = "h(0.2 + 0.3i) = " + num(want) + ", max estimate gap " + num(worst);
        return worst <= 1e-9;
    });

    run_check(rep, "horoball-euclidean-disc", [&](std::string& d) {
        // level log(1)/2 horoball at 1 is the euclidean disc |z - 1/2| < 1/2
        const ApproachSequence seq =
            approach_sequence(Domain::disk(), BoundaryTarget::at(Point(Complex(1, 0))),
                              ApproachStyle::radial(), 40);
        const HorofunctionEstimate est = estimate_horofunction(disk, o, seq);
        const bool center = horoball_contains(est, Point(Complex(0.5, 0)), 1.0) ==
                            Ternary::True;
        const bool deep = horoball_contains(est, Point(Complex(0.99, 0)), 1.0) ==
                          Ternary::True;
        const bool rim = horoball_contains(est, o, 1.0) == Ternary::False;
        const bool out = horoball_contains(est, Point(Complex(-0.01, 0)), 1.0) ==
                         Ternary::False;
        d = fmt::format("center {}, deep {}, rim {}, outside {}", center, deep, rim, out);
        return center && deep && rim && out;
    });

    run_check(rep, "halfway-julia-number", [&](std::string& d) {
        const HolomorphicMap halfway =
            HolomorphicMap::affine(Complex(0.5, 0), Complex(0.5, 0));
        const WolffData wolff = wolff_data(disk, halfway, o);
        const WolffInclusionReport incl = wolff_inclusion_check(
            disk, halfway, wolff, {1.0}, 8, {1},
            {ApproachStyle::radial(), ApproachStyle::tangential(0.4)});
        d = "max one-step drop " + num(incl.one_step_drop_max) + " <= " +
            num(-0.5 * std::log(2.0));
        return incl.one_step_drop_max <= -0.5 * std::log(2.0) + 1e-9;
    });

    return rep;
}

}  // namespace

bool SuiteReport::all_pass() const {
    for (const SuiteCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

std::vector<std::string> suite_names() {
    return {"distances", "geodesy",          "horofunction", "ends",
            "compactification", "dynamics",  "chain",        "examples"};
}

SuiteReport run_suite(const std::string& name) {
    if (name == "distances") return distances_suite();
    if (name == "geodesy") return geodesy_suite();
    if (name == "horofunction") return horofunction_suite();
    if (name == "ends") return ends_suite();
    if (name == "compactification") return compactification_suite();
    if (name == "dynamics") return dynamics_suite();
    if (name == "chain") return chain_suite();
    if (name == "examples") return examples_suite();
    if (name == "all") {
        SuiteReport all{"all", {}};
        for (const std::string& n : suite_names()) {
            SuiteReport one = run_suite(n);
            for (SuiteCheck& c : one.checks) {
                c.name = n + "/" + c.name;
                all.checks.push_back(std::move(c));
            }
        }
        return all;
    }
    throw input_error("unknown suite '" + name + "'");
}

}  // namespace horolab
