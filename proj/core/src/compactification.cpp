#include "horolab/compactification.hpp"

#include <algorithm>
#include <cmath>

#include "horolab/error.hpp"

namespace horolab {

CompactificationReport good_compactification_probe(const DistanceEngine& engine,
                                                   const std::vector<PathSample>& family,
                                                   const Point& pole) {
    if (family.empty())
        throw input_error("compactification probe: empty geodesic family");
    for (const PathSample& p : family)
        if (p.points.empty())
            throw input_error("compactification probe: empty path in family");

    CompactificationReport rep;

    std::vector<Point> starts, finishes;
    for (const PathSample& p : family) {
        starts.push_back(p.points.front());
        finishes.push_back(p.points.back());
    }

    // precondition: both endpoint sequences limit onto one horofunction
    const auto est_a = estimate_horofunction(
        engine, pole,
        approach_sequence(engine.domain(), BoundaryTarget{},
                          ApproachStyle::custom(starts, "family-starts"), 1));
    const auto est_b = estimate_horofunction(
        engine, pole,
        approach_sequence(engine.domain(), BoundaryTarget{},
                          ApproachStyle::custom(finishes, "family-ends"), 1));
    double gap = 0.0;
    const std::size_t m = std::min(est_a.values.size(), est_b.values.size());
    for (std::size_t k = 0; k < m; ++k)
        gap = std::max(gap, std::abs(est_a.values[k] - est_b.values[k]));
    rep.endpoint_gap = gap;
    // finite-term estimates settle only to their oscillation certificates, so
    // the match band scales with them
    rep.endpoints_match = gap <= 1e-4 + 4.0 * (est_a.osc + est_b.osc);
    if (!rep.endpoints_match)
        rep.detail = "endpoint horofunction mismatch; divergence verdict withheld";

    rep.claim_holds = true;
    for (const PathSample& p : family) {
        double dmin = 1e300;
        for (const Point& q : p.points)
            dmin = std::min(dmin, engine.distance(pole, q));
        rep.min_distances.push_back(dmin);
        const double bound =
            gromov_product(engine, pole, p.points.front(), p.points.back());
        rep.gromov_bounds.push_back(bound);
        if (dmin < bound - 1e-9) rep.claim_holds = false;
    }

    bool exceeds = false;
    for (double d : rep.min_distances) exceeds |= d > 5.0;
    bool monotone = true;
    for (std::size_t i = rep.min_distances.size() / 2 + 1; i < rep.min_distances.size();
         ++i)
        if (rep.min_distances[i] < rep.min_distances[i - 1] - 1e-12) monotone = false;
    rep.diverges = rep.endpoints_match && exceeds && monotone;
    return rep;
}

}  // namespace horolab
