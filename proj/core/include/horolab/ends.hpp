#pragma once

#include <string>
#include <vector>

#include "horolab/domain.hpp"
#include "horolab/engine.hpp"
#include "horolab/point.hpp"

namespace horolab {

// Ideal target of an escaping sequence: either a Euclidean boundary point or
// an end (a nested chain of unbounded complement components).  end_index
// refers to the EndTree the target was classified against; direction is the
// normalized position of the deepest witness, kept so targets stay comparable
// without the tree at hand.
struct BoundaryTarget {
    enum class Kind { BoundaryPoint, End };
    Kind kind = Kind::BoundaryPoint;
    Point point;          // boundary point case
    int end_index = -1;   // end case
    Complex direction{0.0, 0.0};

    static BoundaryTarget at(Point p) {
        BoundaryTarget t;
        t.kind = Kind::BoundaryPoint;
        t.point = p;
        return t;
    }
    static BoundaryTarget end(int index, Complex dir) {
        BoundaryTarget t;
        t.kind = Kind::End;
        t.end_index = index;
        t.direction = dir;
        return t;
    }
};

bool same_target(const BoundaryTarget& a, const BoundaryTarget& b, double tol = 1e-6);

// Connected components of (closure of the domain) minus the level-j clip
// {|z| <= j}, found by lattice flood fill at resolution h_j.
struct EndComponent {
    int level = 0;
    int id = 0;        // index within its level
    int parent = -1;   // component id one level down, -1 at level 1
    Complex representative;  // deepest cell center
    Complex foothold;        // shallowest cell center; stays inside the
                             // parent level's tracked window
    std::size_t cells = 0;
};

struct End {
    std::vector<int> component_path;  // ids, one per level 1..max_level
    Complex direction;                // normalized deepest representative
};

class EndTree {
  public:
    const Domain& domain() const { return domain_; }
    int max_level() const { return max_level_; }
    const std::vector<std::vector<EndComponent>>& levels() const { return levels_; }
    const std::vector<End>& ends() const { return ends_; }
    double resolution(int level) const;

    // Component id containing z at this level, -1 when z sits in the clip
    // K_level or off the tracked window.
    int component_at(int level, Complex z) const;

  private:
    friend EndTree build_end_tree(const Domain& domain, int max_level);

    struct LabelGrid {
        double x0 = 0.0, y0 = 0.0, h = 1.0;
        int nx = 0, ny = 0;
        std::vector<int> labels;  // -1 empty
    };

    Domain domain_ = Domain::disk();
    int max_level_ = 0;
    std::vector<std::vector<EndComponent>> levels_;
    std::vector<LabelGrid> grids_;
    std::vector<End> ends_;
};

// Planar domains get the full flood-fill tree.  Bounded two-dimensional
// domains are handled analytically (complement empty beyond the bounding
// level, hence no ends); unbounded two-dimensional domains are out of grid
// reach and rejected.
EndTree build_end_tree(const Domain& domain, int max_level);

struct LimitClass {
    enum class Kind { Interior, Boundary, End, NoLimit } kind = Kind::NoLimit;
    BoundaryTarget target;  // filled for Boundary / End
    std::string detail;
};

LimitClass classify_limit(const EndTree& tree, const std::vector<Point>& seq);

// Tree-free precondition check: does the sequence plausibly converge to the
// given target?  Boundary points use the extrapolated Euclidean limit; ends
// use escape plus direction agreement.
bool sequence_converges_to(const Domain& domain, const std::vector<Point>& seq,
                           const BoundaryTarget& target, double tol = 1e-4);

struct DivergenceReport {
    std::vector<double> diagonal;  // k(x_n, y_n)
    double min_tail_pairs = 0.0;   // min over tail index pairs (n, m)
    bool monotone_tail = false;
    bool divergent = false;
    double threshold = 5.0;
};

// Estimates liminf k(x_n, y_m) for sequences escaping to distinct targets.
// Throws input_error when the classified targets coincide.
DivergenceReport divergence_check(const DistanceEngine& engine, const EndTree& tree,
                                  const std::vector<Point>& xs,
                                  const std::vector<Point>& ys,
                                  double threshold = 5.0);

}  // namespace horolab
