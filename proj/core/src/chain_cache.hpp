#pragma once

// Memo shared by all copies of a chain engine: clipped lattices with
// precomputed edge weight intervals, keyed by pitch.  The mutex keeps the
// engine's share-across-threads promise; entries are immutable once built.

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "horolab/point.hpp"

namespace horolab::detail {

struct ChainEdge {
    int to;
    double lo, hi;
};

struct ChainLattice {
    double x0 = 0.0, y0 = 0.0, h = 0.0;
    int nx = 0, ny = 0;
    std::vector<int> node_id;  // -1 when absent, else dense id

    int id_at(int ix, int iy) const {
        if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) return -1;
        return node_id[static_cast<size_t>(iy) * nx + ix];
    }
};

struct ChainBase {
    ChainLattice lat;
    std::vector<Complex> pts;
    std::vector<std::vector<ChainEdge>> adj;  // both directions, weights baked
};

}  // namespace horolab::detail

namespace horolab {

struct ChainGraphCache {
    std::mutex mu;
    std::unordered_map<long long, std::shared_ptr<const detail::ChainBase>> by_pitch;
};

}  // namespace horolab
