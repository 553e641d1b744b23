#pragma once

#include <string>
#include <vector>

#include "horolab/geodesy.hpp"
#include "horolab/horofunction.hpp"

namespace horolab {

struct CompactificationReport {
    std::vector<double> min_distances;  // d(pole, sigma_n), sampled minimum per path
    std::vector<double> gromov_bounds;  // <x_n, y_n>_pole, the proven floor
    bool endpoints_match = false;  // start/end sequences share a horofunction
    double endpoint_gap = 0.0;     // sup-over-probes gap between the two estimates
    bool claim_holds = false;      // min_distances[n] >= gromov_bounds[n] - 1e-9
    bool diverges = false;  // some minimum exceeds 5 and the last half is monotone
    std::string detail;
};

// Probes the good-compactification property on a geodesic family: when the
// two endpoint sequences generate the same horofunction, the pole-to-geodesic
// distances should run away.  An endpoint mismatch is reported in the result,
// not thrown.
CompactificationReport good_compactification_probe(const DistanceEngine& engine,
                                                   const std::vector<PathSample>& family,
                                                   const Point& pole);

}  // namespace horolab
