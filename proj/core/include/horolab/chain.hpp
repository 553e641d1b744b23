#pragma once

#include <vector>

#include "horolab/engine.hpp"
#include "horolab/point.hpp"

namespace horolab {

/// Shortest grid chain found by the interval solver: node positions, the
/// running upper length estimate at each node, the distance interval, and the
/// lattice pitch the answer came from.
struct ChainPath {
    std::vector<Point> nodes;
    std::vector<double> t_hi;
    Interval interval;
    double pitch = 0.0;
};

/// Interval estimate of the distance between two members of a planar domain.
///
/// A 16-neighbor lattice clipped to the domain carries per-edge weights
/// integrated from the infinitesimal metric interval: the upper weight uses
/// the sup sample of the upper metric bound along the edge, the lower weight
/// the inf sample of the lower bound.  hi is the Dijkstra value under upper
/// weights (an over-estimate of any distance realized by grid chains), lo the
/// value under lower weights.  For convex polygons the metric interval itself
/// is [|v|/(2 delta), |v|/delta], so lo inherits the one-half factor; the
/// bracket [lo, hi] is a working estimate, not a certificate.
///
/// The lattice is refined by halving until the width meets tol or the pitch
/// floor is hit; then refinement_error carries the best interval.
Interval chain_distance(const DistanceEngine& engine, const Point& z, const Point& w,
                        double tol);

/// Same solver, returning the chain realizing the upper estimate at the
/// finest pitch tried.  Used to lay out quasi-geodesics on chain engines.
ChainPath chain_shortest_path(const DistanceEngine& engine, const Point& z, const Point& w);

/// Graph distance between two members at a fixed pitch, upper weights only.
/// Sub-chains of shortest chains are shortest, which makes this the reference
/// metric for verifying chain-built quasi-geodesics.
double chain_graph_distance(const DistanceEngine& engine, const Point& z, const Point& w,
                            double pitch);

}  // namespace horolab
