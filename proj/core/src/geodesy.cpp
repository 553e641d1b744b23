#include "horolab/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "horolab/chain.hpp"
#include "horolab/error.hpp"

namespace horolab {

namespace {

Complex disk_geodesic_point(Complex a, Complex b, double s) {
    const Complex bp = (b - a) / (1.0 - std::conj(a) * b);
    const double r = std::abs(bp);
    if (r == 0.0) return a;
    const Complex q = std::tanh(s) * (bp / r);
    return (q + a) / (1.0 + std::conj(a) * q);
}

Point ball_geodesic_point(const Point& z, const Point& w, double s) {
    const Point wp = ball_involution(z, w);
    const double r = std::hypot(std::abs(wp[0]), std::abs(wp[1]));
    if (r == 0.0) return z;
    const double scale = std::tanh(s) / r;
    return ball_involution(z, Point(scale * wp[0], scale * wp[1]));
}

Point geodesic_point_impl(const DistanceEngine& e, const Point& z, const Point& w,
                          double s) {
    switch (e.domain().kind()) {
        case DomainKind::Disk:
            return Point(disk_geodesic_point(z[0], w[0], s));
        case DomainKind::Ball:
            if (e.domain().dimension() == 1)
                return Point(disk_geodesic_point(z[0], w[0], s));
            return ball_geodesic_point(z, w, s);
        case DomainKind::HalfPlane:
        case DomainKind::Strip:
        case DomainKind::ConformalSquare: {
            const DiskChart* chart = e.chart();
            const Complex q =
                disk_geodesic_point(chart->to_disk(z[0]), chart->to_disk(w[0]), s);
            return Point(chart->from_disk(q));
        }
        case DomainKind::Polydisc:
        case DomainKind::Product: {
            const auto& fe = e.factor_engines();
            double total = 0.0;
            std::vector<double> len(fe.size());
            std::vector<Point> zi, wi;
            for (std::size_t i = 0; i < fe.size(); ++i) {
                zi.emplace_back(z[static_cast<int>(i)]);
                wi.emplace_back(w[static_cast<int>(i)]);
                len[i] = fe[i].distance(zi[i], wi[i]);
                total = std::max(total, len[i]);
            }
            if (total == 0.0) return z;
            // slower factors run at fraction len/total of unit speed so the
            // coordinate max realizes the parameter throughout
            Complex c1 = geodesic_point_impl(fe[0], zi[0], wi[0], s * len[0] / total)[0];
            if (fe.size() == 1) return Point(c1);
            Complex c2 = geodesic_point_impl(fe[1], zi[1], wi[1], s * len[1] / total)[0];
            return Point(c1, c2);
        }
        case DomainKind::ConvexPolygon:
            throw input_error("geodesic: chain engines have no exact geodesics");
    }
    throw input_error("geodesic: unhandled domain kind");
}

void require_pointwise(const DistanceEngine& e, const char* what) {
    if (!e.pointwise())
        throw input_error(std::string(what) + ": requires a pointwise engine");
}

void require_members(const DistanceEngine& e, std::initializer_list<Point> pts,
                     const char* what) {
    for (const auto& p : pts)
        if (!e.domain().contains(p))
            throw input_error(std::string(what) + ": point is not in the domain");
}

double metric_between(const DistanceEngine& e, const PathSample& path, const Point& a,
                      const Point& b) {
    if (path.grid_pitch > 0.0) return chain_graph_distance(e, a, b, path.grid_pitch);
    return e.distance(a, b);
}

}  // namespace

Point geodesic_point(const DistanceEngine& engine, const Point& z, const Point& w,
                     double s) {
    require_pointwise(engine, "geodesic_point");
    require_members(engine, {z, w}, "geodesic_point");
    return geodesic_point_impl(engine, z, w, s);
}

PathSample geodesic(const DistanceEngine& engine, const Point& z, const Point& w,
                    int samples) {
    require_pointwise(engine, "geodesic");
    require_members(engine, {z, w}, "geodesic");
    if (samples < 1) throw input_error("geodesic: sample count must be positive");

    PathSample path;
    path.is_geodesic = true;
    const double total = engine.distance(z, w);
    if (total == 0.0) {
        path.t = {0.0};
        path.points = {z};
        return path;
    }
    for (int i = 0; i <= samples; ++i) {
        const double s = total * i / samples;
        path.t.push_back(s);
        path.points.push_back(i == 0 ? z
                              : i == samples ? w
                                             : geodesic_point_impl(engine, z, w, s));
    }
    return path;
}

PathSample quasi_geodesic(const DistanceEngine& engine, const Point& z, const Point& w,
                          double eps) {
    if (!(eps > 0.0)) throw input_error("quasi_geodesic: eps must be positive");
    require_members(engine, {z, w}, "quasi_geodesic");

    PathSample path;
    path.epsilon = eps;
    if (z == w) {
        path.t = {0.0};
        path.points = {z};
        return path;
    }

    if (engine.pointwise()) {
        const double total = engine.distance(z, w);
        const int hops = std::max(1, static_cast<int>(std::ceil(total / (eps / 4.0))));
        path = geodesic(engine, z, w, hops);
        path.is_geodesic = false;
        path.epsilon = eps;
    }

    std::size_t budget = 4096;
    if (!engine.pointwise()) {
        const ChainPath cp = chain_shortest_path(engine, z, w);
        path.grid_pitch = cp.pitch;
        path.t = cp.t_hi;
        path.points = cp.nodes;
        budget = 60;  // each graph-metric check runs a lattice search
    }

    const PairwiseCheck check = verify_path(engine, path, eps, budget);
    if (!check.ok())
        throw numeric_error("quasi_geodesic: pairwise bounds failed; worst excess " +
                            std::to_string(check.worst_excess));
    return path;
}

double gromov_product(const DistanceEngine& engine, const Point& p, const Point& x,
                      const Point& y) {
    require_members(engine, {p, x, y}, "gromov_product");
    return 0.5 * (engine.distance(x, p) + engine.distance(y, p) - engine.distance(x, y));
}

PairwiseCheck verify_path(const DistanceEngine& engine, const PathSample& path,
                          double eps, std::size_t max_pairs) {
    PairwiseCheck out;
    const std::size_t n = path.size();
    if (n < 2) return out;

    std::size_t stride = 1;
    while (((n / stride) * (n / stride)) / 2 > max_pairs) ++stride;

    const double slack = eps + 1e-9;
    for (std::size_t i = 0; i < n; i += stride) {
        for (std::size_t j = i + stride; j < n; j += stride) {
            const double gap = path.t[j] - path.t[i];
            const double d = metric_between(engine, path, path.points[i], path.points[j]);
            const double excess = std::abs(d - gap) - slack;
            ++out.pairs_checked;
            if (excess > 0.0) {
                ++out.violations;
                out.worst_excess = std::max(out.worst_excess, excess);
            }
        }
    }
    return out;
}

}  // namespace horolab
