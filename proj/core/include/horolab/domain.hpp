#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "horolab/point.hpp"

namespace horolab {

enum class DomainKind {
    Disk,            // unit disk in C
    HalfPlane,       // upper half plane Im z > 0
    Strip,           // horizontal strip im_min < Im z < im_max
    Ball,            // Euclidean unit ball in C^dim
    Polydisc,        // product of unit disks
    Product,         // product of planar factors, total dimension <= 2
    ConvexPolygon,   // bounded convex planar region, polyline boundary
    ConformalSquare, // open square (-s/2,s/2)^2 with an exact disk chart
};

/// Level-j compact piece of the open domain: boundary_distance >= 2^-j and
/// max-coordinate modulus <= j.  Levels are strictly nested; every interior
/// point acquires a finite level.
struct ExhaustionSchedule {
    int max_level = 64;
    double margin(int j) const { return std::ldexp(1.0, -j); }
    double radius(int j) const { return static_cast<double>(j); }
};

/// Axis-aligned sampling window, one rectangle per complex coordinate.
/// Finite even for unbounded domains; deterministic sample grids live here.
struct Window {
    struct Rect {
        double re0, re1, im0, im1;
    };
    std::vector<Rect> rects;
};

/// Immutable description of a bounded-or-unbounded hyperbolic domain.
/// Knows membership, Euclidean boundary distance, and its exhaustion; all
/// metric questions belong to DistanceEngine.
class Domain {
  public:
    static Domain disk();
    static Domain half_plane();
    static Domain strip(double im_min, double im_max);
    static Domain ball(int dim);
    static Domain polydisc(int dim);
    static Domain product(std::vector<Domain> factors);
    /// Closed convex polyline, counter-clockwise, at least 8 vertices
    /// (collinear vertices allowed, sign flips not).
    static Domain convex_polygon(std::vector<Complex> vertices);
    static Domain conformal_square(double side);

    DomainKind kind() const { return kind_; }
    int dimension() const { return dim_; }
    bool bounded() const { return bounded_; }
    bool convex() const { return convex_; }
    std::string describe() const;

    /// Strict open-set membership.  Points whose computed boundary distance
    /// is zero (including doubles that rounded onto the boundary) are
    /// non-members.  Classifications within eps_membership() of the boundary
    /// are numerically ambiguous and validators treat them as such.
    bool contains(const Point& z) const;

    /// Euclidean distance to the boundary; positive exactly on members.
    /// For products this is the min over factors.
    double boundary_distance(const Point& z) const;

    /// Distance to the closure (zero inside, positive outside); used by the
    /// ends flood fill which works with closed cells.
    double closure_gap(const Point& z) const;

    /// Smallest exhaustion level containing z; throws input_error off the
    /// domain and numeric_error past the level cap.
    int exhaustion_index(const Point& z) const;
    bool in_level(const Point& z, int j) const;
    const ExhaustionSchedule& exhaustion() const { return exhaustion_; }

    /// Interior basepoint that every boundary segment may be contracted
    /// toward (0, the strip center line, the vertex centroid).
    Point anchor() const;

    Window probe_window() const;

    /// Documented width of the numerically ambiguous boundary band.
    static constexpr double eps_membership() { return 1e-12; }

    // Kind-specific accessors; throw input_error if the kind does not match.
    const std::vector<Domain>& factors() const;
    const std::vector<Complex>& vertices() const;
    double strip_im_min() const;
    double strip_im_max() const;
    double square_half_side() const;

  private:
    Domain() = default;

    DomainKind kind_ = DomainKind::Disk;
    int dim_ = 1;
    bool bounded_ = true;
    bool convex_ = true;
    double im_min_ = 0.0, im_max_ = 1.0;  // strip
    double half_side_ = 1.0;              // conformal square
    std::vector<Domain> factors_;         // product; polydisc uses disk factors
    std::vector<Complex> vertices_;       // convex polygon
    ExhaustionSchedule exhaustion_;

    double planar_boundary_distance(Complex z) const;
    double planar_closure_gap(Complex z) const;
};

/// Nearest boundary point, used when an escaping sequence is classified:
/// coordinates already at the boundary are projected, interior coordinates
/// are kept.
Point project_to_boundary(const Domain& d, const Point& z);

}  // namespace horolab
