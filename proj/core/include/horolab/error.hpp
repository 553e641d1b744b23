#pragma once

#include <stdexcept>
#include <string>

namespace horolab {

// Bad inputs: malformed descriptors, points outside the domain, styles that
// don't apply, maps that fail self-map certification.  The CLI maps these to
// exit code 2.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numeric trouble at run time: estimates that refuse to settle, searches that
// exhaust their schedule, interval refinements that stall.  Exit code 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct search_error : numeric_error {
    using numeric_error::numeric_error;
};

// Use of a horofunction estimate whose certificate is missing or too loose.
struct estimate_error : numeric_error {
    using numeric_error::numeric_error;
};

struct horizon_error : numeric_error {
    using numeric_error::numeric_error;
};

// Raised by the grid engine when the requested interval width is unreachable
// at the finest grid.  Carries the best interval seen so the caller can still
// use it.
struct refinement_error : numeric_error {
    double best_lo;
    double best_hi;
    refinement_error(const std::string& what, double lo, double hi)
        : numeric_error(what), best_lo(lo), best_hi(hi) {}
};

}  // namespace horolab
