#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "horolab/domain.hpp"
#include "horolab/ends.hpp"
#include "horolab/engine.hpp"
#include "horolab/point.hpp"

namespace horolab {

// estimation defaults: tolerance for a settled estimate, tail window feeding
// the oscillation certificate, hard cap on sequence terms consumed
constexpr double kTolH = 1e-6;
constexpr int kTailLength = 5;
constexpr int kMaxTerms = 60;

struct ApproachStyle {
    enum class Kind { Radial, Tangential, Skew, Height, Custom };
    Kind kind = Kind::Radial;
    double angle = 0.0;  // tangential: angle off the inward direction
    std::array<double, 2> exponents{1.0, 1.0};  // skew: dyadic rate per coordinate
    double height = 0.5;                        // strip ends: imaginary level
    std::vector<Point> custom_points;
    std::string custom_name;

    static ApproachStyle radial();
    static ApproachStyle tangential(double angle);
    static ApproachStyle skew(double e1, double e2);
    static ApproachStyle at_height(double h);
    static ApproachStyle custom(std::vector<Point> pts, std::string name = "custom");

    std::string label() const;
};

struct ApproachSequence {
    BoundaryTarget target;
    ApproachStyle style;
    std::vector<Point> points;
    // true when the construction stopped early because the next term rounded
    // onto the boundary (or repeated); the sequence stays honest, just short
    bool saturated = false;
};

// Realizes the style toward the target.  Radial walks anchor -> sigma with
// dyadic steps; tangential tilts the disk approach by `angle`; skew runs
// product coordinates at different dyadic rates; strip ends march along a
// horizontal line.  Throws input_error when the style does not apply.
ApproachSequence approach_sequence(const Domain& domain, const BoundaryTarget& target,
                                   const ApproachStyle& style, int n_terms);

// Limit candidate of normalized distances h_n = k(., x_n) - k(p, x_n) over a
// fixed probe grid, with an oscillation certificate over the tail sweeps.
// Borrows the engine; keep it alive while the estimate is in use.
struct HorofunctionEstimate {
    const DistanceEngine* engine = nullptr;
    Point pole;
    ApproachSequence seq;
    std::vector<Point> probes;               // pole first, then grid, then extras
    std::vector<double> values;              // final sweep, aligned with probes
    std::vector<std::vector<double>> tail;   // last sweeps, oldest first
    double osc = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool monotone_tail = false;
    double last_pole_distance = 0.0;         // k(p, x_N)

    // h at any domain point, evaluated against the final sequence term;
    // exactly 0 at the pole
    double value_at(const Point& z) const;
};

HorofunctionEstimate estimate_horofunction(const DistanceEngine& engine,
                                           const Point& pole,
                                           const ApproachSequence& seq,
                                           const std::vector<Point>& extra_probes = {});

enum class Ternary { False, True, Indeterminate };

const char* to_string(Ternary t);

// Strict test h(z) < (1/2) log R with a 2*osc guard band.  Values inside the
// band come back Indeterminate, except exact equality which is decidedly out.
Ternary horoball_contains(const HorofunctionEstimate& est, const Point& z,
                          double radius);

// A point with h < level (level < 0), found by marching from the pole toward
// the late sequence terms.  Throws search_error if the schedule fails.
Point deep_point(const HorofunctionEstimate& est, double level);

struct HorosphereReport {
    Ternary in_big = Ternary::Indeterminate;
    Ternary in_small = Ternary::Indeterminate;
    std::string witness_big, witness_small;     // extremal family members
    std::vector<std::string> family;            // style labels, aligned below
    std::vector<double> limit_values;           // h_i(z) per family member
    std::vector<Ternary> member_verdict;        // horoball test per member
    bool all_resolved = true;
};

// Finite-family stand-in for the liminf/limsup horospheres: in_big holds when
// some family member's horoball contains z, in_small when all do.
HorosphereReport horosphere_membership(const DistanceEngine& engine, const Point& pole,
                                       const BoundaryTarget& x, const Point& z,
                                       double radius,
                                       const std::vector<ApproachStyle>& family);

// Same decision from estimates built once and queried many times (rasters,
// bulk suites).
HorosphereReport horosphere_membership(const std::vector<HorofunctionEstimate>& family,
                                       const Point& z, double radius);

// One estimate per style, targets verified; the building block shared by the
// horosphere and fiber operations.
std::vector<HorofunctionEstimate> family_estimates(
    const DistanceEngine& engine, const Point& pole, const BoundaryTarget& x,
    const std::vector<ApproachStyle>& styles,
    const std::vector<Point>& extra_probes = {});

enum class Distinctness { Identical, Distinct, Indeterminate };

struct FiberSample {
    std::vector<HorofunctionEstimate> estimates;
    std::vector<std::vector<double>> gaps;  // sup over probes of |h_i - h_j|
    std::vector<std::vector<Distinctness>> verdicts;
};

// Horofunction limits reachable along the given styles, with a pairwise
// distinctness matrix (guard band 4*osc, identity band kTolH).
FiberSample fiber_sample(const DistanceEngine& engine, const Point& pole,
                         const BoundaryTarget& x,
                         const std::vector<ApproachStyle>& styles);

struct ConvexityReport {
    std::size_t chords_checked = 0;
    std::size_t chord_violations = 0;
    std::size_t rays_checked = 0;
    std::size_t ray_violations = 0;
    double worst_chord_excess = 0.0;
    double worst_ray_excess = 0.0;
    bool ok() const { return chord_violations == 0 && ray_violations == 0; }
};

// Samples chords between horoball points (quasi-convexity within 3*osc) and
// segments toward the Euclidean target (star-shapedness).  Convex bounded
// domains only.
ConvexityReport convexity_check(const DistanceEngine& engine,
                                const HorofunctionEstimate& est, double radius,
                                int sample_count, std::uint64_t seed = 1234);

}  // namespace horolab
