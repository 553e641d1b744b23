#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "horolab/ends.hpp"
#include "horolab/engine.hpp"
#include "horolab/holomap.hpp"
#include "horolab/horofunction.hpp"
#include "horolab/point.hpp"

namespace horolab {

struct OrbitRecord {
    Point seed;
    std::vector<Point> iterates;       // f^0(seed) first
    std::vector<int> exhaustion;       // level index per iterate
    std::vector<double> pole_distance; // k(pole, f^n(seed))
    Point pole;
    bool saturated = false;   // doubles parked on the boundary; orbit truncated
    bool stabilized = false;  // consecutive iterates became identical
    LimitClass limit;
    std::string classification;  // boundary | end | relatively-compact | inconclusive
};

// Iterates a certified map, re-validating membership each step.  A step that
// rounds onto the boundary truncates the orbit (saturated); a step that exits
// beyond 1e-9 voids the certificate and throws input_error.
OrbitRecord iterate(const DistanceEngine& engine, const HolomorphicMap& f,
                    const Point& seed, int horizon, const EndTree* tree = nullptr);

enum class DivergenceVerdict { CompactlyDivergent, RelativelyCompact, Inconclusive };

struct DivergenceOutcome {
    DivergenceVerdict verdict = DivergenceVerdict::Inconclusive;
    int horizon = 0;
    int escape_level = 0;
    std::vector<int> max_index;    // per seed
    std::vector<int> final_index;  // per seed
};

// Empirical compact-divergence test: every orbit must end beyond the escape
// level to count as divergent, every orbit must stay under it to count as
// relatively compact.
DivergenceOutcome compact_divergence(const DistanceEngine& engine,
                                     const HolomorphicMap& f,
                                     const std::vector<Point>& seeds, int horizon = 200,
                                     int escape_level = 10);

struct WolffData {
    OrbitRecord orbit;              // from the pole
    std::vector<int> subsequence;   // indices with strictly increasing pole distance
    BoundaryTarget x;               // classified limit of the subsequence
    HorofunctionEstimate xi;        // estimate along the subsequence
};

// Extracts the distance-increasing subsequence of the pole orbit, classifies
// its target and estimates the associated horofunction.  Requires a positive
// compact-divergence verdict.
WolffData wolff_data(const DistanceEngine& engine, const HolomorphicMap& f,
                     const Point& pole, int horizon = 200);

struct WolffInclusionReport {
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::size_t indeterminate = 0;
    // one-step change h(f(z)) - h(z) over all sampled horoball points
    double one_step_drop_min = std::numeric_limits<double>::infinity();
    double one_step_drop_max = -std::numeric_limits<double>::infinity();
    bool ok() const { return violations == 0; }
};

// For samples z inside the Wolff horoball of each radius and each listed
// power n, checks that f^n(z) lands in the big horosphere at x (family
// approximation).  Indeterminate memberships are tallied, not failed.
WolffInclusionReport wolff_inclusion_check(const DistanceEngine& engine,
                                           const HolomorphicMap& f,
                                           const WolffData& wolff,
                                           const std::vector<double>& radii,
                                           int samples_per_ball,
                                           const std::vector<int>& powers,
                                           const std::vector<ApproachStyle>& big_family,
                                           std::uint64_t seed = 99);

struct DenjoyWolffReport {
    enum class Verdict {
        RelativelyCompact,
        BoundaryLimit,
        NoCommonLimit,
        Inconclusive
    } verdict = Verdict::Inconclusive;
    BoundaryTarget y;                        // when BoundaryLimit
    std::vector<std::string> seed_outcomes;  // per-seed classification text
    std::vector<double> spreads;             // probe-ball image spread per step
    double final_spread = 0.0;
    bool spread_shrinks = false;
};

const char* to_string(DenjoyWolffReport::Verdict v);

DenjoyWolffReport denjoy_wolff(const DistanceEngine& engine, const HolomorphicMap& f,
                               const std::vector<Point>& seeds, int horizon = 200);

struct TargetSetSample {
    std::vector<BoundaryTarget> targets;  // deduplicated
    double late_cross_distance = 0.0;     // max cross-seed distance at late steps
    bool constant_consistent = false;     // single target while cross distances stay bounded
};

// Samples the limit-target set across seeds and dyadic subsequence schedules.
TargetSetSample target_set_sample(const DistanceEngine& engine, const HolomorphicMap& f,
                                  const std::vector<Point>& seeds, int horizon = 200);

struct ShrinkProbe {
    std::vector<double> radii;
    std::vector<double> diameters;  // Euclidean diameter of the sampled region
    bool singleton_consistent = false;
};

// Samples the big horosphere at each radius in the schedule and tracks its
// Euclidean extent; the singleton hypothesis predicts shrinkage toward x.
ShrinkProbe big_horosphere_shrink_probe(const DistanceEngine& engine, const Point& pole,
                                        const BoundaryTarget& x,
                                        const std::vector<double>& radii,
                                        const std::vector<ApproachStyle>& family,
                                        int raster_count = 4000);

struct InvarianceReport {
    bool precondition_ok = false;  // no sampled fixed point
    std::string detail;
    std::size_t checks = 0;
    std::size_t violations = 0;
    double drop_min = std::numeric_limits<double>::infinity();
    double drop_max = -std::numeric_limits<double>::infinity();
    bool ok() const { return precondition_ok && violations == 0; }
};

// One-step horoball invariance h(f(z)) <= h(z) + guard on samples in each
// horoball, using the Wolff horofunction.  A detected interior fixed point
// degrades the result to a precondition report instead of running the check.
InvarianceReport invariant_horoball_check(const DistanceEngine& engine,
                                          const HolomorphicMap& f, const Point& pole,
                                          const std::vector<double>& radii, int samples,
                                          std::uint64_t seed = 5);

}  // namespace horolab
