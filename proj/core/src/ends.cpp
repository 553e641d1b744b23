#include "horolab/ends.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "horolab/error.hpp"

namespace horolab {

namespace {

double grid_pitch(int level) { return std::ldexp(1.0, -std::min(level + 2, 6)); }

struct Band {
    double re0, re1, im0, im1;
};

// closure band wide enough to hold the complement of the level-j clip
Band closure_band(const Domain& d, int level) {
    const double reach = level + 2.0;
    switch (d.kind()) {
        case DomainKind::HalfPlane:
            return {-reach, reach, 0.0, reach};
        case DomainKind::Strip:
            return {-reach, reach, d.strip_im_min(), d.strip_im_max()};
        default: {
            const auto r = d.probe_window().rects[0];
            return {r.re0, r.re1, r.im0, r.im1};
        }
    }
}

bool same_end_direction(Complex a, Complex b) {
    const double na = std::abs(a), nb = std::abs(b);
    if (na == 0.0 || nb == 0.0) return false;
    return (a.real() * b.real() + a.imag() * b.imag()) / (na * nb) > 0.0;
}

// Aitken extrapolation of one coordinate; geometric fallback when the second
// difference degenerates
Complex aitken_coord(Complex a, Complex b, Complex c, double rate) {
    const Complex d2 = (c - b) - (b - a);
    if (std::abs(d2) <= 1e-3 * std::abs(c - b)) {
        const double f = rate / (1.0 - rate);
        return c + f * (c - b);
    }
    return c - (c - b) * (c - b) / d2;
}

// geometric-tail extrapolation of the Euclidean limit; false when the step
// sizes do not contract.  Steps parked at rounding scale count as converged.
bool euclidean_limit(const std::vector<Point>& seq, Point* limit) {
    const std::size_t n = seq.size();
    if (n < 4) return false;
    const double s2 = seq[n - 1].sup_dist(seq[n - 2]);
    const double s1 = seq[n - 2].sup_dist(seq[n - 3]);
    const double s0 = seq[n - 3].sup_dist(seq[n - 4]);
    const double park = 32.0 * std::numeric_limits<double>::epsilon() *
                        (1.0 + seq[n - 1].max_abs());
    if (s2 <= park) {
        *limit = seq[n - 1];
        return true;
    }
    if (s1 == 0.0 || s0 == 0.0) return false;
    const double r1 = s2 / s1, r0 = s1 / s0;
    if (r1 > 0.85 || r0 > 0.85) return false;
    if (seq[n - 1].dim() == 1) {
        *limit = Point(aitken_coord(seq[n - 3][0], seq[n - 2][0], seq[n - 1][0], r1));
    } else {
        *limit = Point(aitken_coord(seq[n - 3][0], seq[n - 2][0], seq[n - 1][0], r1),
                       aitken_coord(seq[n - 3][1], seq[n - 2][1], seq[n - 1][1], r1));
    }
    return true;
}

}  // namespace

bool same_target(const BoundaryTarget& a, const BoundaryTarget& b, double tol) {
    if (a.kind != b.kind) return false;
    if (a.kind == BoundaryTarget::Kind::BoundaryPoint)
        return a.point.dim() == b.point.dim() && a.point.sup_dist(b.point) <= tol;
    if (a.end_index >= 0 && b.end_index >= 0) return a.end_index == b.end_index;
    return same_end_direction(a.direction, b.direction);
}

double EndTree::resolution(int level) const {
    if (level < 1 || level > static_cast<int>(grids_.size())) return 0.0;
    return grids_[static_cast<size_t>(level - 1)].h;
}

int EndTree::component_at(int level, Complex z) const {
    if (level < 1 || level > static_cast<int>(grids_.size())) return -1;
    const LabelGrid& g = grids_[static_cast<size_t>(level - 1)];
    if (g.nx == 0) return -1;
    const int ix = static_cast<int>(std::floor((z.real() - g.x0) / g.h));
    const int iy = static_cast<int>(std::floor((z.imag() - g.y0) / g.h));
    int best = -1;
    double best_d2 = 1e300;
    for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
            const int jx = ix + dx, jy = iy + dy;
            if (jx < 0 || jy < 0 || jx >= g.nx || jy >= g.ny) continue;
            const int lab = g.labels[static_cast<size_t>(jy) * g.nx + jx];
            if (lab < 0) continue;
            const double cx = g.x0 + (jx + 0.5) * g.h, cy = g.y0 + (jy + 0.5) * g.h;
            const double d2 = (cx - z.real()) * (cx - z.real()) +
                              (cy - z.imag()) * (cy - z.imag());
            if (d2 < best_d2) {
                best_d2 = d2;
                best = lab;
            }
        }
    }
    return best;
}

EndTree build_end_tree(const Domain& domain, int max_level) {
    if (max_level < 1 || max_level > 12)
        throw input_error("end tree: level count must be in 1..12");

    EndTree tree;
    tree.domain_ = domain;
    tree.max_level_ = max_level;
    tree.levels_.resize(static_cast<size_t>(max_level));

    if (domain.dimension() > 1) {
        if (!domain.bounded())
            throw input_error(
                "end tree: unbounded two-dimensional domains exceed grid scale");
        // bounded: the clip swallows the closure at every level, so every
        // complement is empty and there are no ends
        return tree;
    }

    tree.grids_.resize(static_cast<size_t>(max_level));
    for (int j = 1; j <= max_level; ++j) {
        const double h = grid_pitch(j);
        const Band band = closure_band(domain, j);
        EndTree::LabelGrid& g = tree.grids_[static_cast<size_t>(j - 1)];
        g.h = h;
        g.x0 = band.re0 - 2.0 * h;
        g.y0 = band.im0 - 2.0 * h;
        g.nx = static_cast<int>(std::ceil((band.re1 + 2.0 * h - g.x0) / h));
        g.ny = static_cast<int>(std::ceil((band.im1 + 2.0 * h - g.y0) / h));
        g.labels.assign(static_cast<size_t>(g.nx) * g.ny, -1);

        auto center = [&](int ix, int iy) {
            return Complex(g.x0 + (ix + 0.5) * h, g.y0 + (iy + 0.5) * h);
        };
        auto occupied = [&](int ix, int iy) {
            const Complex c = center(ix, iy);
            if (std::abs(c) <= static_cast<double>(j)) return false;  // inside clip
            return domain.closure_gap(Point(c)) <= 0.75 * h;
        };

        std::vector<EndComponent>& comps = tree.levels_[static_cast<size_t>(j - 1)];
        for (int iy = 0; iy < g.ny; ++iy) {
            for (int ix = 0; ix < g.nx; ++ix) {
                const size_t idx = static_cast<size_t>(iy) * g.nx + ix;
                if (g.labels[idx] >= 0 || !occupied(ix, iy)) continue;

                const int label = static_cast<int>(comps.size());
                EndComponent comp;
                comp.level = j;
                comp.id = label;
                comp.representative = center(ix, iy);
                comp.foothold = comp.representative;

                std::queue<std::pair<int, int>> bfs;
                g.labels[idx] = label;
                bfs.push({ix, iy});
                while (!bfs.empty()) {
                    const auto [cx, cy] = bfs.front();
                    bfs.pop();
                    ++comp.cells;
                    const Complex cc = center(cx, cy);
                    if (std::abs(cc) > std::abs(comp.representative))
                        comp.representative = cc;
                    if (std::abs(cc) < std::abs(comp.foothold)) comp.foothold = cc;
                    constexpr int kN[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                    for (const auto& d : kN) {
                        const int nx2 = cx + d[0], ny2 = cy + d[1];
                        if (nx2 < 0 || ny2 < 0 || nx2 >= g.nx || ny2 >= g.ny) continue;
                        const size_t nidx = static_cast<size_t>(ny2) * g.nx + nx2;
                        if (g.labels[nidx] >= 0 || !occupied(nx2, ny2)) continue;
                        g.labels[nidx] = label;
                        bfs.push({nx2, ny2});
                    }
                }
                comps.push_back(comp);
            }
        }

        if (j > 1)
            for (EndComponent& c : comps)
                c.parent = tree.component_at(j - 1, c.foothold);
    }

    // ends: components at the top level whose parent chain reaches level 1
    const auto& top = tree.levels_[static_cast<size_t>(max_level - 1)];
    for (const EndComponent& c : top) {
        std::vector<int> path(static_cast<size_t>(max_level), -1);
        path[static_cast<size_t>(max_level - 1)] = c.id;
        bool complete = true;
        int cur = c.id;
        for (int j = max_level; j > 1; --j) {
            const auto& comp =
                tree.levels_[static_cast<size_t>(j - 1)][static_cast<size_t>(cur)];
            cur = comp.parent;
            if (cur < 0) {
                complete = false;
                break;
            }
            path[static_cast<size_t>(j - 2)] = cur;
        }
        if (!complete) continue;
        End e;
        e.component_path = path;
        e.direction = c.representative / std::abs(c.representative);
        tree.ends_.push_back(e);
    }
    return tree;
}

LimitClass classify_limit(const EndTree& tree, const std::vector<Point>& seq) {
    LimitClass out;
    if (seq.size() < 4) {
        out.detail = "sequence too short to classify";
        return out;
    }
    const Domain& dom = tree.domain();
    for (const Point& p : seq)
        if (!dom.contains(p))
            throw input_error("classify_limit: sequence point is not in the domain");

    Point limit;
    if (euclidean_limit(seq, &limit)) {
        if (dom.closure_gap(limit) <= 1e-6) {
            if (dom.contains(limit) && dom.boundary_distance(limit) > 1e-9) {
                out.kind = LimitClass::Kind::Interior;
                out.detail = "limit point is interior";
                return out;
            }
            out.kind = LimitClass::Kind::Boundary;
            out.target = BoundaryTarget::at(project_to_boundary(dom, limit));
            return out;
        }
        out.detail = "euclidean limit escapes the closure window";
        return out;
    }

    // end classification: per level, the last two visits beyond the clip must
    // land in one component, and the chain must match exactly one end on the
    // levels the sequence observes.  A geometric escape can jump across a
    // level's tracked annulus entirely; such levels stay unobserved.
    if (!tree.ends().empty()) {
        std::vector<int> chain(static_cast<size_t>(tree.max_level()), -1);
        bool consistent = true;
        int observed = 0;
        for (int j = 1; j <= tree.max_level() && consistent; ++j) {
            // visits to the annulus between clip j and the level-j window edge;
            // deeper points fall off the level grid
            int last = -1, prev = -1;
            for (std::size_t n = seq.size(); n-- > 0;) {
                const double r = seq[n].max_abs();
                if (r > static_cast<double>(j) && r <= j + 1.9) {
                    if (last < 0) {
                        last = static_cast<int>(n);
                    } else {
                        prev = static_cast<int>(n);
                        break;
                    }
                }
            }
            if (last < 0) continue;  // annulus jumped over
            const int c_last = tree.component_at(j, seq[static_cast<size_t>(last)][0]);
            chain[static_cast<size_t>(j - 1)] = c_last;
            if (c_last < 0) consistent = false;
            ++observed;
            if (prev >= 0) {
                const int c_prev =
                    tree.component_at(j, seq[static_cast<size_t>(prev)][0]);
                if (c_prev >= 0 && c_prev != c_last) consistent = false;
            }
        }
        if (consistent && observed >= 2) {
            int match = -1;
            int match_count = 0;
            for (std::size_t e = 0; e < tree.ends().size(); ++e) {
                bool fits = true;
                for (std::size_t j = 0; j < chain.size(); ++j)
                    if (chain[j] >= 0 && chain[j] != tree.ends()[e].component_path[j])
                        fits = false;
                if (fits) {
                    match = static_cast<int>(e);
                    ++match_count;
                }
            }
            if (match_count == 1) {
                out.kind = LimitClass::Kind::End;
                out.target =
                    BoundaryTarget::end(match, tree.ends()[static_cast<size_t>(match)]
                                                   .direction);
                return out;
            }
        }
    }
    out.detail = "no euclidean limit and no consistent end chain";
    return out;
}

bool sequence_converges_to(const Domain& domain, const std::vector<Point>& seq,
                           const BoundaryTarget& target, double tol) {
    if (seq.size() < 3) return false;
    if (target.kind == BoundaryTarget::Kind::BoundaryPoint) {
        Point limit;
        if (euclidean_limit(seq, &limit)) return limit.sup_dist(target.point) <= tol;
        // saturated or slow sequences: accept when the tail parked next to
        // the target
        return seq.back().sup_dist(target.point) <= std::max(tol, 1e-3);
    }
    if (domain.bounded()) return false;
    const double far = seq.back().max_abs();
    if (far < 3.0 || far <= seq.front().max_abs()) return false;
    for (std::size_t n = seq.size() - std::min<std::size_t>(3, seq.size());
         n < seq.size(); ++n) {
        if (!same_end_direction(seq[n][0], target.direction)) return false;
    }
    return true;
}

DivergenceReport divergence_check(const DistanceEngine& engine, const EndTree& tree,
                                  const std::vector<Point>& xs,
                                  const std::vector<Point>& ys, double threshold) {
    const LimitClass cx = classify_limit(tree, xs);
    const LimitClass cy = classify_limit(tree, ys);
    if (cx.kind == LimitClass::Kind::Interior || cy.kind == LimitClass::Kind::Interior ||
        cx.kind == LimitClass::Kind::NoLimit || cy.kind == LimitClass::Kind::NoLimit)
        throw input_error("divergence check: sequences must escape to ideal targets");
    if (same_target(cx.target, cy.target))
        throw input_error("divergence check: the two targets coincide");

    DivergenceReport rep;
    rep.threshold = threshold;
    const std::size_t n = std::min(xs.size(), ys.size());
    for (std::size_t i = 0; i < n; ++i)
        rep.diagonal.push_back(engine.distance(xs[i], ys[i]));

    const std::size_t tail_len = std::min<std::size_t>(12, (n + 1) / 2);
    const std::size_t t0 = n - tail_len;
    double min_pairs = 1e300;
    for (std::size_t i = t0; i < xs.size() && i < t0 + tail_len; ++i)
        for (std::size_t j = t0; j < ys.size() && j < t0 + tail_len; ++j)
            min_pairs = std::min(min_pairs, engine.distance(xs[i], ys[j]));
    rep.min_tail_pairs = min_pairs;

    rep.monotone_tail = true;
    for (std::size_t i = t0 + 1; i < n; ++i)
        if (rep.diagonal[i] < rep.diagonal[i - 1] - 1e-12) rep.monotone_tail = false;
    rep.divergent = rep.monotone_tail && min_pairs > threshold;
    return rep;
}

}  // namespace horolab
