#include "horolab/horofunction.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "horolab/error.hpp"
#include "horolab/geodesy.hpp"
#include "horolab/probes.hpp"

#include <fmt/core.h>

namespace horolab {

namespace {

constexpr int kFamilyTerms = 40;

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex coord_or_zero(const Point& p, int i) { return i < p.dim() ? p[i] : Complex{}; }

Point affine_mix(const Point& a, const Point& b, double t) {
    // t*a + (1-t)*b coordinatewise
    if (a.dim() == 1) return Point(t * a[0] + (1.0 - t) * b[0]);
    return Point(t * a[0] + (1.0 - t) * b[0], t * a[1] + (1.0 - t) * b[1]);
}

}  // namespace

ApproachStyle ApproachStyle::radial() { return {}; }

ApproachStyle ApproachStyle::tangential(double angle) {
    ApproachStyle s;
    s.kind = Kind::Tangential;
    s.angle = angle;
    return s;
}

ApproachStyle ApproachStyle::skew(double e1, double e2) {
    ApproachStyle s;
    s.kind = Kind::Skew;
    s.exponents = {e1, e2};
    return s;
}

ApproachStyle ApproachStyle::at_height(double h) {
    ApproachStyle s;
    s.kind = Kind::Height;
    s.height = h;
    return s;
}

ApproachStyle ApproachStyle::custom(std::vector<Point> pts, std::string name) {
    ApproachStyle s;
    s.kind = Kind::Custom;
    s.custom_points = std::move(pts);
    s.custom_name = std::move(name);
    return s;
}

std::string ApproachStyle::label() const {
    switch (kind) {
        case Kind::Radial: return "radial";
        case Kind::Tangential: return fmt::format("tangential({:.6g})", angle);
        case Kind::Skew:
            return fmt::format("skew({:.6g},{:.6g})", exponents[0], exponents[1]);
        case Kind::Height: return fmt::format("height({:.6g})", height);
        case Kind::Custom: return custom_name;
    }
    return "?";
}

ApproachSequence approach_sequence(const Domain& domain, const BoundaryTarget& target,
                                   const ApproachStyle& style, int n_terms) {
    if (n_terms < 1) throw input_error("approach sequence: need at least one term");

    ApproachSequence seq;
    seq.target = target;
    seq.style = style;

    if (style.kind == ApproachStyle::Kind::Custom) {
        for (const Point& p : style.custom_points)
            if (!domain.contains(p))
                throw input_error("approach sequence: custom point outside the domain");
        seq.points = style.custom_points;
        if (seq.points.empty())
            throw input_error("approach sequence: custom style carries no points");
        return seq;
    }

    auto term = [&](int n) -> Point {
        if (target.kind == BoundaryTarget::Kind::End) {
            if (domain.bounded())
                throw input_error("approach sequence: bounded domains have no ends");
            if (domain.kind() == DomainKind::Strip) {
                const double side = target.direction.real();
                if (side == 0.0)
                    throw input_error("approach sequence: strip end needs a direction");
                double c = 0.5 * (domain.strip_im_min() + domain.strip_im_max());
                if (style.kind == ApproachStyle::Kind::Height) {
                    c = style.height;
                    if (c <= domain.strip_im_min() || c >= domain.strip_im_max())
                        throw input_error("approach sequence: height outside the strip");
                } else if (style.kind != ApproachStyle::Kind::Radial) {
                    throw input_error(
                        "approach sequence: strip ends take radial or height styles");
                }
                return Point(Complex((side > 0 ? 1.0 : -1.0) * n, c));
            }
            if (domain.kind() == DomainKind::HalfPlane) {
                if (style.kind != ApproachStyle::Kind::Radial)
                    throw input_error(
                        "approach sequence: the half-plane end takes the radial style");
                // doubling heights: the normalized distances settle like
                // |z|^2 / 4^n, a linear march would stall at 1/n^2
                return Point(Complex(0.0, std::ldexp(1.0, n)));
            }
            throw input_error("approach sequence: no end targets on this domain");
        }

        const Point& sigma = target.point;
        if (sigma.dim() != domain.dimension())
            throw input_error("approach sequence: target dimension mismatch");
        const Point a = domain.anchor();
        const double f = std::ldexp(1.0, -n);  // 2^-n

        switch (style.kind) {
            case ApproachStyle::Kind::Radial: {
                if (domain.dimension() == 1)
                    return Point(sigma[0] + f * (a[0] - sigma[0]));
                return Point(sigma[0] + f * (a[0] - sigma[0]),
                             sigma[1] + f * (a[1] - sigma[1]));
            }
            case ApproachStyle::Kind::Tangential: {
                if (domain.dimension() != 1)
                    throw input_error(
                        "approach sequence: tangential style is one-dimensional");
                const Complex tilt = std::polar(1.0, style.angle);
                return Point(sigma[0] + f * tilt * (a[0] - sigma[0]));
            }
            case ApproachStyle::Kind::Skew: {
                if (domain.dimension() != 2)
                    throw input_error(
                        "approach sequence: skew style needs two coordinates");
                const double f1 = std::ldexp(1.0, -n * style.exponents[0]);
                const double f2 = std::ldexp(1.0, -n * style.exponents[1]);
                return Point(sigma[0] + f1 * (coord_or_zero(a, 0) - sigma[0]),
                             sigma[1] + f2 * (coord_or_zero(a, 1) - sigma[1]));
            }
            case ApproachStyle::Kind::Height:
                throw input_error(
                    "approach sequence: height style applies to strip ends");
            case ApproachStyle::Kind::Custom: break;  // handled above
        }
        throw input_error("approach sequence: unsupported style");
    };

    for (int n = 1; n <= n_terms; ++n) {
        const Point x = term(n);
        if (!domain.contains(x)) {
            if (seq.points.empty()) continue;  // early tangential terms may overshoot
            seq.saturated = true;              // rounded onto the boundary
            break;
        }
        if (!seq.points.empty() && x == seq.points.back()) {
            seq.saturated = true;
            break;
        }
        seq.points.push_back(x);
    }
    if (seq.points.empty())
        throw input_error("approach sequence: no term landed inside the domain");
    return seq;
}

double HorofunctionEstimate::value_at(const Point& z) const {
    return engine->distance(z, seq.points.back()) - last_pole_distance;
}

HorofunctionEstimate estimate_horofunction(const DistanceEngine& engine,
                                           const Point& pole,
                                           const ApproachSequence& seq,
                                           const std::vector<Point>& extra_probes) {
    if (!engine.pointwise())
        throw input_error("horofunction estimate: needs a pointwise engine");
    const Domain& dom = engine.domain();
    if (!dom.contains(pole))
        throw input_error("horofunction estimate: pole is not in the domain");
    if (seq.points.empty()) throw input_error("horofunction estimate: empty sequence");

    // escape precondition: the tail must approach the boundary or run out the
    // window, never orbit an interior point
    const Point& first = seq.points.front();
    const Point& last = seq.points.back();
    const bool toward_boundary =
        dom.boundary_distance(last) < 0.5 * dom.boundary_distance(first);
    const bool outward = last.max_abs() > first.max_abs() + 1.0;
    if (seq.points.size() > 1 && !toward_boundary && !outward)
        throw input_error("horofunction estimate: sequence does not escape");

    HorofunctionEstimate est;
    est.engine = &engine;
    est.pole = pole;
    est.seq = seq;
    if (static_cast<int>(est.seq.points.size()) > kMaxTerms)
        est.seq.points.resize(kMaxTerms);

    est.probes.push_back(pole);
    for (const Point& p : probe_grid(dom)) est.probes.push_back(p);
    for (const Point& p : extra_probes) {
        bool dup = false;
        for (const Point& q : est.probes)
            if (q.dim() == p.dim() && q.sup_dist(p) < 1e-12) dup = true;
        if (!dup) {
            if (!dom.contains(p))
                throw input_error("horofunction estimate: probe outside the domain");
            est.probes.push_back(p);
        }
    }

    const std::size_t keep = kTailLength + 1;
    for (const Point& x : est.seq.points) {
        const double dp = engine.distance(pole, x);
        std::vector<double> sweep(est.probes.size());
        for (std::size_t k = 0; k < est.probes.size(); ++k)
            sweep[k] = engine.distance(est.probes[k], x) - dp;
        est.tail.push_back(std::move(sweep));
        if (est.tail.size() > keep) est.tail.erase(est.tail.begin());
        est.last_pole_distance = dp;
    }
    est.values = est.tail.back();

    if (est.tail.size() >= 2) {
        double osc = 0.0;
        bool monotone = true;
        for (std::size_t t = 1; t < est.tail.size(); ++t) {
            for (std::size_t k = 0; k < est.probes.size(); ++k) {
                const double step = est.tail[t][k] - est.tail[t - 1][k];
                osc = std::max(osc, std::abs(step));
                if (step > 1e-12) monotone = false;
            }
        }
        est.osc = osc;
        est.monotone_tail = monotone;
        est.converged = osc < kTolH;
    }
    return est;
}

const char* to_string(Ternary t) {
    switch (t) {
        case Ternary::False: return "false";
        case Ternary::True: return "true";
        case Ternary::Indeterminate: return "indeterminate";
    }
    return "?";
}

Ternary horoball_contains(const HorofunctionEstimate& est, const Point& z,
                          double radius) {
    if (!est.converged)
        throw estimate_error("horoball test: estimate did not converge");
    if (!(radius > 0.0)) throw input_error("horoball test: radius must be positive");
    const double h = est.value_at(z);
    const double level = 0.5 * std::log(radius);
    if (h == level) return Ternary::False;  // strict test, decided exactly
    if (std::abs(h - level) <= 2.0 * est.osc) return Ternary::Indeterminate;
    return h < level ? Ternary::True : Ternary::False;
}

Point deep_point(const HorofunctionEstimate& est, double level) {
    if (!est.converged)
        throw estimate_error("deep point: estimate did not converge");
    if (!(level < 0.0)) throw input_error("deep point: level must be negative");
    const DistanceEngine& engine = *est.engine;
    const Point& late = est.seq.points.back();
    const double reach = engine.distance(est.pole, late);

    for (const double factor : {1.2, 2.0, 4.0}) {
        const double s = std::min(factor * (-level), 0.995 * reach);
        const Point z = geodesic_point(engine, est.pole, late, s);
        const double h = est.value_at(z);
        if (h < level - 2.0 * est.osc) return z;
    }
    throw search_error("deep point: march schedule exhausted without h < level");
}

std::vector<HorofunctionEstimate> family_estimates(
    const DistanceEngine& engine, const Point& pole, const BoundaryTarget& x,
    const std::vector<ApproachStyle>& styles, const std::vector<Point>& extra_probes) {
    if (styles.empty()) throw input_error("family: no styles given");
    std::vector<HorofunctionEstimate> out;
    for (const ApproachStyle& style : styles) {
        ApproachSequence seq = approach_sequence(engine.domain(), x, style, kFamilyTerms);
        if (!sequence_converges_to(engine.domain(), seq.points, x))
            throw input_error("family: sequence misses its target: " + style.label());
        out.push_back(estimate_horofunction(engine, pole, seq, extra_probes));
    }
    return out;
}

HorosphereReport horosphere_membership(const std::vector<HorofunctionEstimate>& family,
                                       const Point& z, double radius) {
    if (family.empty()) throw input_error("horosphere: empty family");

    HorosphereReport rep;
    double vmin = 1e300, vmax = -1e300;
    for (const auto& est : family) {
        const double v = est.value_at(z);
        rep.family.push_back(est.seq.style.label());
        rep.limit_values.push_back(v);
        if (!est.converged) {
            rep.all_resolved = false;
            rep.member_verdict.push_back(Ternary::Indeterminate);
        } else {
            rep.member_verdict.push_back(horoball_contains(est, z, radius));
        }
        if (v < vmin) {
            vmin = v;
            rep.witness_big = rep.family.back();
        }
        if (v > vmax) {
            vmax = v;
            rep.witness_small = rep.family.back();
        }
    }

    bool any_true = false, any_false = false, any_ind = false;
    for (Ternary t : rep.member_verdict) {
        any_true |= t == Ternary::True;
        any_false |= t == Ternary::False;
        any_ind |= t == Ternary::Indeterminate;
    }
    rep.in_big = any_true   ? Ternary::True
                 : any_ind  ? Ternary::Indeterminate
                            : Ternary::False;
    rep.in_small = any_false ? Ternary::False
                   : any_ind ? Ternary::Indeterminate
                             : Ternary::True;
    return rep;
}

HorosphereReport horosphere_membership(const DistanceEngine& engine, const Point& pole,
                                       const BoundaryTarget& x, const Point& z,
                                       double radius,
                                       const std::vector<ApproachStyle>& family) {
    return horosphere_membership(family_estimates(engine, pole, x, family, {z}), z,
                                 radius);
}

FiberSample fiber_sample(const DistanceEngine& engine, const Point& pole,
                         const BoundaryTarget& x,
                         const std::vector<ApproachStyle>& styles) {
    FiberSample fs;
    fs.estimates = family_estimates(engine, pole, x, styles, {});

    const std::size_t n = fs.estimates.size();
    fs.gaps.assign(n, std::vector<double>(n, 0.0));
    fs.verdicts.assign(n, std::vector<Distinctness>(n, Distinctness::Identical));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = fs.estimates[i];
            const auto& b = fs.estimates[j];
            double gap = 0.0;
            const std::size_t m = std::min(a.values.size(), b.values.size());
            for (std::size_t k = 0; k < m; ++k)
                gap = std::max(gap, std::abs(a.values[k] - b.values[k]));
            fs.gaps[i][j] = fs.gaps[j][i] = gap;

            const double guard = std::max(a.osc, b.osc);
            Distinctness v;
            if (a.converged && b.converged) {
                if (gap < kTolH)
                    v = Distinctness::Identical;  // below estimation resolution
                else if (gap > 4.0 * guard)
                    v = Distinctness::Distinct;
                else
                    v = Distinctness::Indeterminate;
            } else {
                v = gap > 2.0 * guard ? Distinctness::Distinct
                                      : Distinctness::Indeterminate;
            }
            fs.verdicts[i][j] = fs.verdicts[j][i] = v;
        }
    }
    return fs;
}

ConvexityReport convexity_check(const DistanceEngine& engine,
                                const HorofunctionEstimate& est, double radius,
                                int sample_count, std::uint64_t seed) {
    const Domain& dom = engine.domain();
    if (!dom.convex())
        throw input_error("convexity check: domain is not convex");
    if (!est.converged)
        throw estimate_error("convexity check: estimate did not converge");
    if (sample_count < 1) throw input_error("convexity check: sample count");

    const double level = 0.5 * std::log(radius);
    const double guard = std::max(3.0 * est.osc, 1e-10);

    // deterministic rejection sample of horoball points
    std::mt19937_64 rng(seed);
    const Window win = dom.probe_window();
    auto draw_domain_point = [&]() -> Point {
        for (int tries = 0; tries < 4000; ++tries) {
            std::array<Complex, 2> c{};
            for (int k = 0; k < dom.dimension(); ++k) {
                const auto& r = win.rects[static_cast<size_t>(k)];
                c[static_cast<size_t>(k)] =
                    Complex(r.re0 + unit_draw(rng) * (r.re1 - r.re0),
                            r.im0 + unit_draw(rng) * (r.im1 - r.im0));
            }
            const Point p = dom.dimension() == 1 ? Point(c[0]) : Point(c[0], c[1]);
            if (dom.contains(p)) return p;
        }
        throw numeric_error("convexity check: rejection sampling starved");
    };

    std::vector<Point> ball_pts;
    const int want = std::min(sample_count, 64);
    for (int tries = 0; tries < sample_count * 4000 &&
                        static_cast<int>(ball_pts.size()) < want;
         ++tries) {
        const Point p = draw_domain_point();
        if (est.value_at(p) < level - guard) ball_pts.push_back(p);
    }
    if (ball_pts.size() < 2)
        throw numeric_error("convexity check: could not populate the horoball");

    ConvexityReport rep;
    for (int s = 0; s < sample_count; ++s) {
        const Point& z1 = ball_pts[rng() % ball_pts.size()];
        const Point& z2 = ball_pts[rng() % ball_pts.size()];
        const double bound = std::max(est.value_at(z1), est.value_at(z2)) + guard;
        for (const double t : {0.25, 0.5, 0.75}) {
            const Point m = affine_mix(z1, z2, t);
            const double hm = est.value_at(m);
            ++rep.chords_checked;
            if (hm > bound) {
                ++rep.chord_violations;
                rep.worst_chord_excess = std::max(rep.worst_chord_excess, hm - bound);
            }
        }
    }

    if (est.seq.target.kind == BoundaryTarget::Kind::BoundaryPoint) {
        const Point& sigma = est.seq.target.point;
        for (int s = 0; s < sample_count; ++s) {
            const Point& z = ball_pts[rng() % ball_pts.size()];
            for (const double lam : {0.2, 0.5, 0.8}) {
                const Point q = affine_mix(z, sigma, lam);  // lam z + (1-lam) sigma
                const double hq = est.value_at(q);
                ++rep.rays_checked;
                if (hq > level + guard) {
                    ++rep.ray_violations;
                    rep.worst_ray_excess =
                        std::max(rep.worst_ray_excess, hq - (level + guard));
                }
            }
        }
    }
    return rep;
}

}  // namespace horolab
