#pragma once

#include <cstddef>
#include <vector>

#include "horolab/engine.hpp"
#include "horolab/point.hpp"

namespace horolab {

// Sampled path. t holds increasing arclength parameters, points the samples.
// Contract: distance(points[i], points[j]) lies within epsilon of |t[i]-t[j]|
// for every sampled pair. grid_pitch > 0 marks paths measured in the chain
// graph metric at that pitch rather than the engine metric.
struct PathSample {
    std::vector<double> t;
    std::vector<Point> points;
    bool is_geodesic = false;
    double epsilon = 0.0;
    double grid_pitch = 0.0;

    std::size_t size() const { return points.size(); }
    double length() const { return t.empty() ? 0.0 : t.back(); }
};

// Point at arclength s on the geodesic from z to w, s in [0, distance(z,w)].
// Pointwise engines only.
Point geodesic_point(const DistanceEngine& engine, const Point& z, const Point& w,
                     double s);

// Unit-speed geodesic with `samples` equal arclength steps (samples+1 points).
// Product domains run every factor geodesic against the clock of the longest
// factor. Chain engines are rejected; use quasi_geodesic.
PathSample geodesic(const DistanceEngine& engine, const Point& z, const Point& w,
                    int samples);

// (1, eps)-quasi-geodesic from z to w. Pointwise engines chop the true
// geodesic into hops of arclength <= eps/4; chain engines return the lattice
// shortest path measured in the graph metric. The pairwise bounds are
// verified before returning; a violation throws numeric_error.
PathSample quasi_geodesic(const DistanceEngine& engine, const Point& z, const Point& w,
                          double eps);

// (d(x,p) + d(y,p) - d(x,y)) / 2.
double gromov_product(const DistanceEngine& engine, const Point& p, const Point& x,
                      const Point& y);

struct PairwiseCheck {
    std::size_t pairs_checked = 0;
    std::size_t violations = 0;
    double worst_excess = 0.0;  // max of (deviation - epsilon) over pairs
    bool ok() const { return violations == 0; }
};

// Checks the quasi-geodesic pair bounds on a path, allowing eps + 1e-9 slack.
// All pairs when their count fits max_pairs, else a deterministic stride.
PairwiseCheck verify_path(const DistanceEngine& engine, const PathSample& path,
                          double eps, std::size_t max_pairs = 4096);

}  // namespace horolab
