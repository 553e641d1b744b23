#include "horolab/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

#include "chain_cache.hpp"
#include "horolab/error.hpp"

namespace horolab {

namespace {

using detail::ChainBase;
using detail::ChainEdge;

constexpr int kOffsets[16][2] = {
    {1, 0},  {0, 1},  {-1, 0}, {0, -1}, {1, 1},   {1, -1}, {-1, 1}, {-1, -1},
    {1, 2},  {2, 1},  {-1, 2}, {-2, 1}, {1, -2},  {2, -1}, {-1, -2}, {-2, -1}};

// sup/inf of the metric bound along the segment, sampled at the endpoints and
// the midpoint.  Edges are short, so three samples track the variation.
void edge_weights(const DistanceEngine& e, Complex a, Complex b, double* lo, double* hi) {
    const Point v(Complex(1.0, 0.0));
    const Interval ka = e.infinitesimal(Point(a), v);
    const Interval km = e.infinitesimal(Point(0.5 * (a + b)), v);
    const Interval kb = e.infinitesimal(Point(b), v);
    const double len = std::abs(b - a);
    *hi = len * std::max({ka.hi, km.hi, kb.hi});
    *lo = len * std::min({ka.lo, km.lo, kb.lo});
}

std::shared_ptr<const ChainBase> build_base(const DistanceEngine& engine, double h) {
    const Domain& dom = engine.domain();
    const auto rect = dom.probe_window().rects[0];

    auto base = std::make_shared<ChainBase>();
    auto& lat = base->lat;
    lat.h = h;
    lat.x0 = rect.re0;
    lat.y0 = rect.im0;
    lat.nx = static_cast<int>(std::floor((rect.re1 - rect.re0) / h)) + 1;
    lat.ny = static_cast<int>(std::floor((rect.im1 - rect.im0) / h)) + 1;
    lat.node_id.assign(static_cast<size_t>(lat.nx) * lat.ny, -1);

    const double margin = 1.1 * h;
    for (int iy = 0; iy < lat.ny; ++iy) {
        for (int ix = 0; ix < lat.nx; ++ix) {
            const Complex p(lat.x0 + ix * h, lat.y0 + iy * h);
            if (!dom.contains(Point(p))) continue;
            if (dom.boundary_distance(Point(p)) < margin) continue;
            lat.node_id[static_cast<size_t>(iy) * lat.nx + ix] =
                static_cast<int>(base->pts.size());
            base->pts.push_back(p);
        }
    }

    // weights are symmetric, so each undirected edge is metered once
    base->adj.resize(base->pts.size());
    for (int iy = 0; iy < lat.ny; ++iy) {
        for (int ix = 0; ix < lat.nx; ++ix) {
            const int a = lat.id_at(ix, iy);
            if (a < 0) continue;
            for (const auto& off : kOffsets) {
                const int b = lat.id_at(ix + off[0], iy + off[1]);
                if (b <= a) continue;
                double lo, hi;
                edge_weights(engine, base->pts[static_cast<size_t>(a)],
                             base->pts[static_cast<size_t>(b)], &lo, &hi);
                base->adj[static_cast<size_t>(a)].push_back({b, lo, hi});
                base->adj[static_cast<size_t>(b)].push_back({a, lo, hi});
            }
        }
    }
    return base;
}

std::shared_ptr<const ChainBase> base_for(const DistanceEngine& engine, double h) {
    ChainGraphCache* cache = engine.chain_cache();
    if (cache == nullptr) return build_base(engine, h);
    const long long key = std::bit_cast<long long>(h);
    // built under the lock: a duplicate build costs far more than the wait
    std::lock_guard<std::mutex> hold(cache->mu);
    auto it = cache->by_pitch.find(key);
    if (it != cache->by_pitch.end()) return it->second;
    auto base = build_base(engine, h);
    cache->by_pitch.emplace(key, base);
    return base;
}

// terminals get ids n and n+1 on top of the lattice and are wired per query
struct TerminalWiring {
    Complex zpos, wpos;
    int src = -1, dst = -1;
    std::vector<ChainEdge> src_out;
    std::unordered_map<int, ChainEdge> into_dst;
};

TerminalWiring wire_terminals(const DistanceEngine& engine, const ChainBase& base,
                              Complex z, Complex w) {
    TerminalWiring tw;
    tw.zpos = z;
    tw.wpos = w;
    tw.src = static_cast<int>(base.pts.size());
    tw.dst = tw.src + 1;

    const auto& lat = base.lat;
    auto collect = [&](Complex p, auto&& sink) {
        const int cx = static_cast<int>(std::round((p.real() - lat.x0) / lat.h));
        const int cy = static_cast<int>(std::round((p.imag() - lat.y0) / lat.h));
        for (int dy = -3; dy <= 3; ++dy) {
            for (int dx = -3; dx <= 3; ++dx) {
                const int b = lat.id_at(cx + dx, cy + dy);
                if (b < 0) continue;
                const Complex q = base.pts[static_cast<size_t>(b)];
                if (std::abs(q - p) > 2.2 * lat.h) continue;
                double lo, hi;
                edge_weights(engine, p, q, &lo, &hi);
                sink(b, lo, hi);
            }
        }
    };
    collect(z, [&](int b, double lo, double hi) { tw.src_out.push_back({b, lo, hi}); });
    collect(w, [&](int b, double lo, double hi) { tw.into_dst.emplace(b, ChainEdge{b, lo, hi}); });
    return tw;
}

struct DijkstraOut {
    double value = std::numeric_limits<double>::infinity();
    std::vector<int> path;  // src..dst when reachable
    std::vector<double> cumulative;
};

DijkstraOut dijkstra(const ChainBase& base, const TerminalWiring& tw, bool upper,
                     bool want_path) {
    const size_t n = base.pts.size() + 2;
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<int> prev(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;

    auto relax = [&](int a, int b, double wgt) {
        if (dist[static_cast<size_t>(a)] + wgt < dist[static_cast<size_t>(b)]) {
            dist[static_cast<size_t>(b)] = dist[static_cast<size_t>(a)] + wgt;
            prev[static_cast<size_t>(b)] = a;
            pq.push({dist[static_cast<size_t>(b)], b});
        }
    };

    dist[static_cast<size_t>(tw.src)] = 0.0;
    pq.push({0.0, tw.src});
    while (!pq.empty()) {
        const auto [d, a] = pq.top();
        pq.pop();
        if (d > dist[static_cast<size_t>(a)]) continue;
        if (a == tw.dst) break;
        if (a == tw.src) {
            for (const ChainEdge& e : tw.src_out) relax(a, e.to, upper ? e.hi : e.lo);
            continue;
        }
        for (const ChainEdge& e : base.adj[static_cast<size_t>(a)])
            relax(a, e.to, upper ? e.hi : e.lo);
        const auto leave = tw.into_dst.find(a);
        if (leave != tw.into_dst.end())
            relax(a, tw.dst, upper ? leave->second.hi : leave->second.lo);
    }

    DijkstraOut out;
    out.value = dist[static_cast<size_t>(tw.dst)];
    if (want_path && std::isfinite(out.value)) {
        for (int a = tw.dst; a != -1; a = prev[static_cast<size_t>(a)]) out.path.push_back(a);
        std::reverse(out.path.begin(), out.path.end());
        auto hi_between = [&](int a, int b) {
            if (a == tw.src) {
                for (const ChainEdge& e : tw.src_out)
                    if (e.to == b) return e.hi;
            } else if (b == tw.dst) {
                return tw.into_dst.at(a).hi;
            } else {
                for (const ChainEdge& e : base.adj[static_cast<size_t>(a)])
                    if (e.to == b) return e.hi;
            }
            return std::numeric_limits<double>::infinity();
        };
        out.cumulative.resize(out.path.size(), 0.0);
        for (size_t i = 1; i < out.path.size(); ++i)
            out.cumulative[i] =
                out.cumulative[i - 1] + hi_between(out.path[i - 1], out.path[i]);
    }
    return out;
}

void validate_chain_call(const DistanceEngine& engine, const Point& z, const Point& w) {
    if (engine.domain().dimension() != 1)
        throw input_error("chain estimate: planar domains only");
    if (!engine.domain().contains(z) || !engine.domain().contains(w))
        throw input_error("chain estimate: point is not in the domain");
}

ChainPath solve_at_pitch(const DistanceEngine& engine, const Point& z, const Point& w,
                         double h, bool want_path) {
    const auto base = base_for(engine, h);
    const TerminalWiring tw = wire_terminals(engine, *base, z[0], w[0]);
    const DijkstraOut up = dijkstra(*base, tw, /*upper=*/true, want_path);
    const DijkstraOut dn = dijkstra(*base, tw, /*upper=*/false, /*want_path=*/false);
    ChainPath cp;
    cp.pitch = h;
    cp.interval = {dn.value, up.value};
    if (want_path) {
        auto at = [&](int id) {
            if (id == tw.src) return tw.zpos;
            if (id == tw.dst) return tw.wpos;
            return base->pts[static_cast<size_t>(id)];
        };
        for (int id : up.path) cp.nodes.emplace_back(at(id));
        cp.t_hi = up.cumulative;
    }
    return cp;
}

}  // namespace

Interval chain_distance(const DistanceEngine& engine, const Point& z, const Point& w,
                        double tol) {
    validate_chain_call(engine, z, w);
    if (z == w) return {0.0, 0.0};

    const ChainParams& p = engine.chain_params();
    Interval best{0.0, std::numeric_limits<double>::infinity()};
    bool have = false;
    for (double h = p.h0; h >= p.h_min; h *= 0.5) {
        const ChainPath cp = solve_at_pitch(engine, z, w, h, /*want_path=*/false);
        if (!std::isfinite(cp.interval.hi)) continue;  // grid too coarse to connect
        if (!have || cp.interval.width() < best.width()) {
            best = cp.interval;
            have = true;
        }
        if (best.width() <= tol) return best;
    }
    if (!have)
        throw numeric_error("chain estimate: endpoints never connected on the lattice");
    if (best.width() <= tol) return best;
    throw refinement_error("chain estimate: tolerance unreachable at the pitch floor",
                           best.lo, best.hi);
}

ChainPath chain_shortest_path(const DistanceEngine& engine, const Point& z, const Point& w) {
    validate_chain_call(engine, z, w);
    const ChainParams& p = engine.chain_params();
    double h_finest = p.h0;
    while (h_finest * 0.5 >= p.h_min) h_finest *= 0.5;
    ChainPath cp = solve_at_pitch(engine, z, w, h_finest, /*want_path=*/true);
    if (!std::isfinite(cp.interval.hi))
        throw numeric_error("chain path: endpoints never connected on the lattice");
    return cp;
}

double chain_graph_distance(const DistanceEngine& engine, const Point& z, const Point& w,
                            double pitch) {
    validate_chain_call(engine, z, w);
    if (z == w) return 0.0;
    const ChainPath cp = solve_at_pitch(engine, z, w, pitch, /*want_path=*/false);
    if (!std::isfinite(cp.interval.hi))
        throw numeric_error("chain graph distance: endpoints never connected");
    return cp.interval.hi;
}

}  // namespace horolab
