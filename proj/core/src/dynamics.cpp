#include "horolab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include <fmt/core.h>

#include "horolab/error.hpp"
#include "horolab/probes.hpp"

namespace horolab {

namespace {

// boundary-rounded images truncate the orbit; anything farther out voids the
// self-map certificate
constexpr double kBoundaryRound = 1e-9;
constexpr int kEscapeLevel = 10;
constexpr int kPreconditionHorizon = 200;

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool finite_point(const Point& z) {
    for (int i = 0; i < z.dim(); ++i)
        if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) return false;
    return true;
}

Point window_draw(const Window& win, std::mt19937_64& rng) {
    auto draw = [&rng](const Window::Rect& r) {
        return Complex(r.re0 + unit_draw(rng) * (r.re1 - r.re0),
                       r.im0 + unit_draw(rng) * (r.im1 - r.im0));
    };
    if (win.rects.size() == 1) return Point(draw(win.rects[0]));
    return Point(draw(win.rects[0]), draw(win.rects[1]));
}

std::string classification_name(const LimitClass& limit) {
    switch (limit.kind) {
        case LimitClass::Kind::Interior: return "relatively-compact";
        case LimitClass::Kind::Boundary: return "boundary";
        case LimitClass::Kind::End: return "end";
        case LimitClass::Kind::NoLimit: return "inconclusive";
    }
    return "inconclusive";
}

std::string render_target(const BoundaryTarget& t) {
    if (t.kind == BoundaryTarget::Kind::BoundaryPoint)
        return "boundary " + format_point(t.point);
    return fmt::format("end {}", t.end_index);
}

std::string seed_outcome(const LimitClass& limit) {
    if (limit.kind == LimitClass::Kind::Boundary || limit.kind == LimitClass::Kind::End)
        return render_target(limit.target);
    return classification_name(limit);
}

// Orbits are classified against a private tree when the caller has none.
// Unbounded two-dimensional domains have no tree; their orbits stay
// unclassified rather than failing the whole run.
std::optional<EndTree> orbit_tree(const Domain& dom) {
    if (dom.dimension() == 1 || dom.bounded()) return build_end_tree(dom, 8);
    return std::nullopt;
}

int clamped_exhaustion_index(const Domain& dom, const Point& z) {
    // the level cap stands in for members wedged past the deepest tracked level
    try {
        return dom.exhaustion_index(z);
    } catch (const numeric_error&) {
        return dom.exhaustion().max_level;
    }
}

double cloud_spread(const std::vector<Point>& pts) {
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            s = std::max(s, pts[i].sup_dist(pts[j]));
    return s;
}

}  // namespace

OrbitRecord iterate(const DistanceEngine& engine, const HolomorphicMap& f,
                    const Point& seed, int horizon, const EndTree* tree) {
    const Domain& dom = engine.domain();
    if (horizon < 1) throw input_error("iterate: horizon must be positive");
    if (!dom.contains(seed)) throw input_error("iterate: seed is not a domain member");

    OrbitRecord rec;
    rec.seed = seed;
    rec.pole = dom.anchor();

    Point current = seed;
    rec.iterates.push_back(current);
    for (int n = 1; n <= horizon; ++n) {
        const Point next = apply_map(engine, f, current);
        if (!finite_point(next)) {
            rec.saturated = true;  // image overflowed the chart
            break;
        }
        if (!dom.contains(next)) {
            const double gap = dom.closure_gap(next);
            if (gap <= kBoundaryRound) {
                rec.saturated = true;  // doubles parked on the boundary
                break;
            }
            throw input_error(fmt::format(
                "iterate: image left the domain by {:.3g}; self-map certificate violated",
                gap));
        }
        if (next == current) {
            rec.stabilized = true;
            break;
        }
        rec.iterates.push_back(next);
        current = next;
    }

    rec.exhaustion.reserve(rec.iterates.size());
    rec.pole_distance.reserve(rec.iterates.size());
    for (const Point& z : rec.iterates) {
        rec.exhaustion.push_back(clamped_exhaustion_index(dom, z));
        rec.pole_distance.push_back(engine.distance(rec.pole, z));
    }

    if (rec.stabilized) {
        rec.limit.kind = LimitClass::Kind::Interior;
        rec.limit.detail = "orbit stabilized at " + format_point(rec.iterates.back());
    } else {
        std::optional<EndTree> own;
        const EndTree* t = tree;
        if (t == nullptr) {
            own = orbit_tree(dom);
            if (own) t = &*own;
        }
        if (t != nullptr) {
            rec.limit = classify_limit(*t, rec.iterates);
            if (rec.saturated && rec.limit.kind == LimitClass::Kind::Interior) {
                // a genuine interior settle ends in an exact fixpoint, never in
                // chart saturation; the parked tail is quantization noise, so
                // strip it and classify the march that preceded it
                std::vector<Point> march = rec.iterates;
                while (march.size() > 4) {
                    const Point& a = march[march.size() - 1];
                    const Point& b = march[march.size() - 2];
                    const double park = 64.0 * std::numeric_limits<double>::epsilon() *
                                        (1.0 + a.max_abs());
                    if (a.sup_dist(b) > park) break;
                    march.pop_back();
                }
                if (march.size() < rec.iterates.size())
                    rec.limit = classify_limit(*t, march);
            }
        } else {
            rec.limit.kind = LimitClass::Kind::NoLimit;
            rec.limit.detail = "no end tree for an unbounded two-dimensional domain";
        }
    }
    rec.classification = classification_name(rec.limit);
    return rec;
}

DivergenceOutcome compact_divergence(const DistanceEngine& engine, const HolomorphicMap& f,
                                     const std::vector<Point>& seeds, int horizon,
                                     int escape_level) {
    if (seeds.empty()) throw input_error("compact divergence: no seeds");
    if (escape_level < 1) throw input_error("compact divergence: escape level must be positive");

    DivergenceOutcome out;
    out.horizon = horizon;
    out.escape_level = escape_level;

    const std::optional<EndTree> tree = orbit_tree(engine.domain());
    bool all_final_deep = true;
    bool all_shallow = true;
    for (const Point& seed : seeds) {
        const OrbitRecord rec = iterate(engine, f, seed, horizon, tree ? &*tree : nullptr);
        const int mx = *std::max_element(rec.exhaustion.begin(), rec.exhaustion.end());
        const int fin = rec.exhaustion.back();
        out.max_index.push_back(mx);
        out.final_index.push_back(fin);
        if (fin < escape_level) all_final_deep = false;
        if (mx >= escape_level) all_shallow = false;
    }
    if (all_final_deep)
        out.verdict = DivergenceVerdict::CompactlyDivergent;
    else if (all_shallow)
        out.verdict = DivergenceVerdict::RelativelyCompact;
    return out;
}

WolffData wolff_data(const DistanceEngine& engine, const HolomorphicMap& f,
                     const Point& pole, int horizon) {
    const Domain& dom = engine.domain();
    const std::optional<EndTree> tree = orbit_tree(dom);
    if (!tree)
        throw input_error("wolff data: unbounded two-dimensional domains are not classifiable");

    WolffData data;
    data.orbit = iterate(engine, f, pole, horizon, &*tree);
    if (data.orbit.exhaustion.back() < kEscapeLevel)
        throw input_error("wolff data: pole orbit is not compactly divergent");

    double best = 0.0;
    for (std::size_t n = 1; n < data.orbit.pole_distance.size(); ++n) {
        if (data.orbit.pole_distance[n] > best) {
            best = data.orbit.pole_distance[n];
            data.subsequence.push_back(static_cast<int>(n));
        }
    }
    if (data.subsequence.size() < 6)
        throw horizon_error("wolff data: fewer than six distance-increasing iterates");

    std::vector<Point> sub;
    sub.reserve(data.subsequence.size());
    for (const int n : data.subsequence) sub.push_back(data.orbit.iterates[n]);

    const LimitClass cls = classify_limit(*tree, sub);
    if (cls.kind != LimitClass::Kind::Boundary && cls.kind != LimitClass::Kind::End)
        throw numeric_error("wolff data: subsequence target did not resolve: " + cls.detail);
    data.x = cls.target;

    const ApproachSequence seq =
        approach_sequence(dom, data.x, ApproachStyle::custom(sub, "orbit-subsequence"),
                          static_cast<int>(sub.size()));
    data.xi = estimate_horofunction(engine, pole, seq);
    return data;
}

WolffInclusionReport wolff_inclusion_check(const DistanceEngine& engine,
                                           const HolomorphicMap& f, const WolffData& wolff,
                                           const std::vector<double>& radii,
                                           int samples_per_ball,
                                           const std::vector<int>& powers,
                                           const std::vector<ApproachStyle>& big_family,
                                           std::uint64_t seed) {
    if (radii.empty() || powers.empty())
        throw input_error("wolff inclusion: empty radius or power schedule");
    if (samples_per_ball < 1) throw input_error("wolff inclusion: need at least one sample");
    for (const int p : powers)
        if (p < 1) throw input_error("wolff inclusion: powers must be positive");

    const Domain& dom = engine.domain();
    const std::vector<HorofunctionEstimate> family =
        family_estimates(engine, wolff.orbit.pole, wolff.x, big_family);

    WolffInclusionReport report;
    std::mt19937_64 rng(seed);
    const Window win = dom.probe_window();
    const int max_power = *std::max_element(powers.begin(), powers.end());

    for (const double radius : radii) {
        if (!(radius > 0.0)) throw input_error("wolff inclusion: radii must be positive");
        const double level = 0.5 * std::log(radius);

        std::vector<Point> samples;
        if (level < 0.0)
            samples.push_back(deep_point(wolff.xi, level));
        else if (level > 0.0)
            samples.push_back(wolff.orbit.pole);
        long budget = static_cast<long>(samples_per_ball) * 3000;
        while (static_cast<int>(samples.size()) < samples_per_ball && budget-- > 0) {
            const Point z = window_draw(win, rng);
            if (!dom.contains(z)) continue;
            if (horoball_contains(wolff.xi, z, radius) == Ternary::True)
                samples.push_back(z);
        }
        if (samples.empty())
            throw search_error("wolff inclusion: no horoball samples found");

        for (const Point& z : samples) {
            Point cur = z;
            for (int p = 1; p <= max_power; ++p) {
                const Point next = apply_map(engine, f, cur);
                // saturated images end the power ladder for this sample
                if (!finite_point(next) || !dom.contains(next)) break;
                if (p == 1) {
                    const double d = wolff.xi.value_at(next) - wolff.xi.value_at(z);
                    report.one_step_drop_min = std::min(report.one_step_drop_min, d);
                    report.one_step_drop_max = std::max(report.one_step_drop_max, d);
                }
                cur = next;
                if (std::find(powers.begin(), powers.end(), p) != powers.end()) {
                    ++report.checks;
                    const HorosphereReport hs = horosphere_membership(family, cur, radius);
                    if (hs.in_big == Ternary::False)
                        ++report.violations;
                    else if (hs.in_big == Ternary::Indeterminate)
                        ++report.indeterminate;
                }
            }
        }
    }
    return report;
}

const char* to_string(DenjoyWolffReport::Verdict v) {
    switch (v) {
        case DenjoyWolffReport::Verdict::RelativelyCompact: return "relatively-compact";
        case DenjoyWolffReport::Verdict::BoundaryLimit: return "boundary-limit";
        case DenjoyWolffReport::Verdict::NoCommonLimit: return "no-common-limit";
        case DenjoyWolffReport::Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

DenjoyWolffReport denjoy_wolff(const DistanceEngine& engine, const HolomorphicMap& f,
                               const std::vector<Point>& seeds, int horizon) {
    if (seeds.empty()) throw input_error("denjoy-wolff: no seeds");
    const Domain& dom = engine.domain();
    const std::optional<EndTree> tree = orbit_tree(dom);

    DenjoyWolffReport report;

    std::vector<OrbitRecord> orbits;
    orbits.reserve(seeds.size());
    bool all_deep = true;
    bool all_shallow = true;
    for (const Point& s : seeds) {
        orbits.push_back(iterate(engine, f, s, horizon, tree ? &*tree : nullptr));
        const OrbitRecord& rec = orbits.back();
        report.seed_outcomes.push_back(seed_outcome(rec.limit));
        const int mx = *std::max_element(rec.exhaustion.begin(), rec.exhaustion.end());
        if (rec.exhaustion.back() < kEscapeLevel) all_deep = false;
        if (mx >= kEscapeLevel) all_shallow = false;
    }

    if (all_shallow) {
        report.verdict = DenjoyWolffReport::Verdict::RelativelyCompact;
    } else if (all_deep) {
        bool resolved = true;
        for (const OrbitRecord& rec : orbits)
            if (rec.limit.kind != LimitClass::Kind::Boundary &&
                rec.limit.kind != LimitClass::Kind::End)
                resolved = false;
        if (resolved) {
            bool common = true;
            for (std::size_t i = 1; i < orbits.size(); ++i)
                if (!same_target(orbits[0].limit.target, orbits[i].limit.target))
                    common = false;
            if (common) {
                report.verdict = DenjoyWolffReport::Verdict::BoundaryLimit;
                report.y = orbits[0].limit.target;
            } else {
                report.verdict = DenjoyWolffReport::Verdict::NoCommonLimit;
            }
        }
    }

    // probe ball around the anchor; its image spread tracks uniform
    // convergence on compacts
    const Point anchor = dom.anchor();
    const double r = std::min(0.25, 0.5 * dom.boundary_distance(anchor));
    std::vector<Point> cloud;
    cloud.push_back(anchor);
    for (int k = 0; k < 8; ++k) {
        const Complex off = r * std::polar(1.0, 0.25 * std::numbers::pi * k);
        Point p = anchor;
        const int coord = (p.dim() == 2 && (k % 2)) ? 1 : 0;
        p[coord] += off;
        if (dom.contains(p)) cloud.push_back(p);
    }

    report.spreads.push_back(cloud_spread(cloud));
    std::vector<Point> images = cloud;
    for (int n = 1; n <= horizon; ++n) {
        std::vector<Point> next;
        next.reserve(images.size());
        bool alive = true;
        for (const Point& p : images) {
            const Point q = apply_map(engine, f, p);
            if (!finite_point(q) || !dom.contains(q)) {
                alive = false;  // the cloud hit double resolution
                break;
            }
            next.push_back(q);
        }
        if (!alive) break;
        images = std::move(next);
        report.spreads.push_back(cloud_spread(images));
    }
    report.final_spread = report.spreads.back();
    report.spread_shrinks = report.spreads.size() >= 2 && report.final_spread < 1e-6;
    return report;
}

TargetSetSample target_set_sample(const DistanceEngine& engine, const HolomorphicMap& f,
                                  const std::vector<Point>& seeds, int horizon) {
    if (seeds.empty()) throw input_error("target set: no seeds");
    const Domain& dom = engine.domain();
    const std::optional<EndTree> tree = orbit_tree(dom);
    if (!tree)
        throw input_error("target set: unbounded two-dimensional domains are not classifiable");

    TargetSetSample out;
    std::vector<OrbitRecord> orbits;
    orbits.reserve(seeds.size());
    for (const Point& s : seeds) orbits.push_back(iterate(engine, f, s, horizon, &*tree));

    auto add_target = [&out](const BoundaryTarget& t) {
        for (const BoundaryTarget& have : out.targets)
            if (same_target(have, t)) return;
        out.targets.push_back(t);
    };

    for (const OrbitRecord& rec : orbits) {
        if (rec.limit.kind == LimitClass::Kind::Boundary ||
            rec.limit.kind == LimitClass::Kind::End)
            add_target(rec.limit.target);

        // dyadic subsequence, in case the full orbit averages two targets
        std::vector<Point> sub;
        for (std::size_t n = 1; n < rec.iterates.size(); n *= 2)
            sub.push_back(rec.iterates[n]);
        if (sub.size() >= 4) {
            const LimitClass cls = classify_limit(*tree, sub);
            if (cls.kind == LimitClass::Kind::Boundary || cls.kind == LimitClass::Kind::End)
                add_target(cls.target);
        }
    }

    // the metric never expands under the map, so late cross-seed distances
    // bounded by the initial ones are consistent with a single target
    double first_cross = 0.0;
    double late_cross = 0.0;
    if (orbits.size() >= 2) {
        std::size_t common = orbits[0].iterates.size();
        for (const OrbitRecord& rec : orbits) common = std::min(common, rec.iterates.size());
        for (std::size_t i = 0; i < orbits.size(); ++i) {
            for (std::size_t j = i + 1; j < orbits.size(); ++j) {
                first_cross = std::max(
                    first_cross, engine.distance(orbits[i].iterates[0], orbits[j].iterates[0]));
                late_cross = std::max(late_cross,
                                      engine.distance(orbits[i].iterates[common - 1],
                                                      orbits[j].iterates[common - 1]));
            }
        }
        out.late_cross_distance = late_cross;
        out.constant_consistent = out.targets.size() == 1 && late_cross <= first_cross + 1e-9;
    } else {
        out.constant_consistent = out.targets.size() == 1;
    }
    return out;
}

ShrinkProbe big_horosphere_shrink_probe(const DistanceEngine& engine, const Point& pole,
                                        const BoundaryTarget& x,
                                        const std::vector<double>& radii,
                                        const std::vector<ApproachStyle>& family,
                                        int raster_count) {
    if (radii.empty()) throw input_error("shrink probe: empty radius schedule");
    if (raster_count < 16) throw input_error("shrink probe: raster too small");
    const Domain& dom = engine.domain();
    const std::vector<HorofunctionEstimate> fam = family_estimates(engine, pole, x, family);

    // thin membership margin: tight horoballs hug the boundary
    const std::vector<Point> coarse = probe_grid(dom, raster_count, 0.002);
    const Window win = dom.probe_window();

    ShrinkProbe probe;
    probe.radii = radii;
    for (const double radius : radii) {
        if (!(radius > 0.0)) throw input_error("shrink probe: radii must be positive");
        const double level = 0.5 * std::log(radius);

        std::vector<Point> members;
        for (const Point& z : coarse)
            if (horosphere_membership(fam, z, radius).in_big == Ternary::True)
                members.push_back(z);

        // guaranteed witnesses anchor the focused pass when the raster misses
        for (const HorofunctionEstimate& est : fam) {
            try {
                members.push_back(deep_point(est, std::min(level, 0.0) - 0.05));
            } catch (const numeric_error&) {
            }
        }

        if (!members.empty()) {
            // second Halton pass over the inflated bounding box of the hits
            const int dim = dom.dimension();
            Window box;
            box.rects.resize(static_cast<std::size_t>(dim));
            for (int c = 0; c < dim; ++c) {
                double re0 = members[0][c].real(), re1 = re0;
                double im0 = members[0][c].imag(), im1 = im0;
                for (const Point& m : members) {
                    re0 = std::min(re0, m[c].real());
                    re1 = std::max(re1, m[c].real());
                    im0 = std::min(im0, m[c].imag());
                    im1 = std::max(im1, m[c].imag());
                }
                const double wr = std::max(2.5 * 0.5 * (re1 - re0), 0.05);
                const double wi = std::max(2.5 * 0.5 * (im1 - im0), 0.05);
                const double cr = 0.5 * (re0 + re1);
                const double ci = 0.5 * (im0 + im1);
                const Window::Rect& outer = win.rects[static_cast<std::size_t>(c)];
                box.rects[static_cast<std::size_t>(c)] = {
                    std::max(cr - wr, outer.re0), std::min(cr + wr, outer.re1),
                    std::max(ci - wi, outer.im0), std::min(ci + wi, outer.im1)};
            }
            static const int kBases[4] = {2, 3, 5, 7};
            for (int k = 1; k <= raster_count; ++k) {
                Point z;
                if (dim == 1) {
                    const Window::Rect& r = box.rects[0];
                    z = Point(Complex(r.re0 + halton(k, kBases[0]) * (r.re1 - r.re0),
                                      r.im0 + halton(k, kBases[1]) * (r.im1 - r.im0)));
                } else {
                    const Window::Rect& r0 = box.rects[0];
                    const Window::Rect& r1 = box.rects[1];
                    z = Point(Complex(r0.re0 + halton(k, kBases[0]) * (r0.re1 - r0.re0),
                                      r0.im0 + halton(k, kBases[1]) * (r0.im1 - r0.im0)),
                              Complex(r1.re0 + halton(k, kBases[2]) * (r1.re1 - r1.re0),
                                      r1.im0 + halton(k, kBases[3]) * (r1.im1 - r1.im0)));
                }
                if (!dom.contains(z)) continue;
                if (horosphere_membership(fam, z, radius).in_big == Ternary::True)
                    members.push_back(z);
            }
        }

        probe.diameters.push_back(cloud_spread(members));
    }

    bool monotone = true;
    for (std::size_t i = 0; i + 1 < probe.diameters.size(); ++i)
        if (probe.diameters[i + 1] > probe.diameters[i] + 1e-9) monotone = false;
    probe.singleton_consistent = monotone && !probe.diameters.empty() &&
                                 probe.diameters.front() > 0.0 &&
                                 probe.diameters.back() < 0.25 * probe.diameters.front();
    return probe;
}

InvarianceReport invariant_horoball_check(const DistanceEngine& engine,
                                          const HolomorphicMap& f, const Point& pole,
                                          const std::vector<double>& radii, int samples,
                                          std::uint64_t seed) {
    if (radii.empty()) throw input_error("invariance check: empty radius schedule");
    if (samples < 1) throw input_error("invariance check: need at least one sample");
    const Domain& dom = engine.domain();

    InvarianceReport report;

    // fixed-point screens; a fixed interior point makes horoball invariance
    // at the boundary meaningless
    double min_disp = std::numeric_limits<double>::infinity();
    for (const Point& z : probe_grid(dom)) {
        const Point fz = apply_map(engine, f, z);
        if (!finite_point(fz) || !dom.contains(fz)) continue;
        min_disp = std::min(min_disp, engine.distance(z, fz));
    }
    if (min_disp < 1e-9) {
        report.detail = "a probe point is fixed by the map";
        return report;
    }
    const DivergenceOutcome div =
        compact_divergence(engine, f, {pole}, kPreconditionHorizon, kEscapeLevel);
    if (div.verdict != DivergenceVerdict::CompactlyDivergent) {
        report.detail = "pole orbit is not compactly divergent";
        return report;
    }
    report.precondition_ok = true;

    const WolffData wolff = wolff_data(engine, f, pole, kPreconditionHorizon);
    const double guard = std::max(4.0 * wolff.xi.osc, 1e-9);

    std::mt19937_64 rng(seed);
    const Window win = dom.probe_window();
    for (const double radius : radii) {
        if (!(radius > 0.0)) throw input_error("invariance check: radii must be positive");
        const double level = 0.5 * std::log(radius);

        std::vector<Point> pts;
        if (level < 0.0) {
            try {
                pts.push_back(deep_point(wolff.xi, level));
            } catch (const numeric_error&) {
            }
        } else if (level > 0.0) {
            pts.push_back(pole);
        }
        long budget = static_cast<long>(samples) * 3000;
        while (static_cast<int>(pts.size()) < samples && budget-- > 0) {
            const Point z = window_draw(win, rng);
            if (!dom.contains(z)) continue;
            if (horoball_contains(wolff.xi, z, radius) == Ternary::True) pts.push_back(z);
        }
        if (pts.empty()) throw search_error("invariance check: no horoball samples found");

        for (const Point& z : pts) {
            const Point fz = apply_map(engine, f, z);
            if (!finite_point(fz) || !dom.contains(fz)) continue;  // saturated image
            const double drop = wolff.xi.value_at(fz) - wolff.xi.value_at(z);
            ++report.checks;
            report.drop_min = std::min(report.drop_min, drop);
            report.drop_max = std::max(report.drop_max, drop);
            if (drop > guard) ++report.violations;
        }
    }
    if (report.checks == 0)
        throw search_error("invariance check: every sampled image saturated");
    report.detail =
        fmt::format("wolff target {}; guard {:.3g}", render_target(wolff.x), guard);
    return report;
}

}  // namespace horolab
