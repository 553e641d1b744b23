#pragma once

#include <cstddef>
#include <vector>

#include "horolab/domain.hpp"
#include "horolab/point.hpp"

namespace horolab {

// Van der Corput radical inverse; the workhorse behind the deterministic
// probe sets.
double halton(std::size_t index, int base);

// Well-spread interior points, identical on every run.  count == 0 picks the
// default budget: 64 in dimension 1, 256 in dimension 2.  Points keep
// Euclidean distance >= margin from the boundary.
std::vector<Point> probe_grid(const Domain& domain, int count = 0,
                              double margin = 0.02);

}  // namespace horolab
