#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "horolab/conformal.hpp"
#include "horolab/domain.hpp"
#include "horolab/point.hpp"

namespace horolab {

struct ChainGraphCache;

enum class EngineMode {
    Exact,             // closed form (disk, ball, polydisc, products of these)
    ConformalPullback, // exact through a disk chart (half plane, strip, square)
    ChainApprox,       // interval-valued grid estimate (convex polygons)
};

/// Grid parameters for the chain estimate.  h0 is the starting lattice pitch;
/// refinement halves it until the requested interval width is met or h_min is
/// passed.  tol is the engine-level default width; infinity means "report
/// whatever interval comes out".
struct ChainParams {
    double h0 = 0.04;
    double h_min = 0.009;
    double tol = std::numeric_limits<double>::infinity();
};

/// Distance oracle for a domain, normalized so the disk metric is
/// |dz| / (1 - |z|^2): k_disk(0, r) = atanh r = (1/2) log((1+r)/(1-r)).
/// Horoball levels therefore read "below (1/2) log R".
///
/// Immutable and safe to share across threads.  Pointwise engines (exact and
/// conformal pullback) return true distances; the chain engine returns
/// certified-format intervals and refuses to feed horofunction estimation.
class DistanceEngine {
  public:
    static DistanceEngine make(Domain domain, ChainParams chain = {});

    const Domain& domain() const { return *domain_; }
    EngineMode mode() const { return mode_; }
    bool pointwise() const { return mode_ != EngineMode::ChainApprox; }

    /// Kobayashi distance between members.  Chain engines return the interval
    /// midpoint and raise refinement_error if the configured tolerance is
    /// unreachable.  Symmetric; zero exactly on the diagonal.
    double distance(const Point& z, const Point& w) const;

    /// Full interval; pointwise engines collapse lo == hi.
    Interval distance_interval(const Point& z, const Point& w) const;

    /// Infinitesimal metric at z along v.  Pointwise engines collapse the
    /// interval; convex polygons report |v| / (2 delta) <= kappa <= |v| / delta
    /// with delta the Euclidean boundary gap.
    Interval infinitesimal(const Point& z, const Point& v) const;

    /// Chart onto the unit disk for planar pullback kinds; empty otherwise.
    const DiskChart* chart() const { return chart_ ? chart_.get() : nullptr; }

    /// Factor engines of a product (polydisc included); empty for other kinds.
    const std::vector<DistanceEngine>& factor_engines() const { return factors_; }

    const ChainParams& chain_params() const { return chain_; }

    /// Lattice memo for the chain solver; null on pointwise engines.
    ChainGraphCache* chain_cache() const { return chain_cache_.get(); }

  private:
    DistanceEngine() = default;

    std::shared_ptr<const Domain> domain_;
    EngineMode mode_ = EngineMode::Exact;
    std::shared_ptr<const DiskChart> chart_;
    std::vector<DistanceEngine> factors_;
    ChainParams chain_;
    std::shared_ptr<ChainGraphCache> chain_cache_;
};

/// Stable curvature -4 disk distance, (1/2) log(((|1-conj(w)z| + |z-w|)^2) /
/// ((1-|z|^2)(1-|w|^2))).  Exposed for oracles and the chart-based engines.
double disk_distance(Complex z, Complex w);

/// Upper half plane counterpart, (1/2) log((|z-w| + |z-conj(w)|)^2 / (4 Im z Im w)).
double half_plane_distance(Complex z, Complex w);

/// Strip {0 < Im < 1} distance through |sinh| identities; safe for large
/// |Re z - Re w| where the exp chart would collapse onto the disk boundary.
double unit_strip_distance(Complex z, Complex w);

/// Unit ball distance in C^2 via the Mobius invariant.
double ball_distance(const Point& z, const Point& w);

/// Ball Mobius involution phi_a with phi_a(0) = a, phi_a(a) = 0.
Point ball_involution(const Point& a, const Point& z);

}  // namespace horolab
