#pragma once

#include <string>
#include <vector>

#include "horolab/engine.hpp"
#include "horolab/point.hpp"

namespace horolab {

// Holomorphic self-map candidate, built from a small set of primitives.
// mobius is the disk automorphism e^{i theta} (z + a) / (1 + conj(a) z);
// disk_conjugate transports a disk map to a charted domain (half-plane,
// strip, conformal square) through its uniformizer.
struct HolomorphicMap {
    enum class Kind { Mobius, Affine, Poly, Coordinatewise, DiskConjugate };
    Kind kind = Kind::Affine;
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    double theta = 0.0;
    std::vector<Complex> coeffs;        // poly, constant term first
    std::vector<HolomorphicMap> parts;  // coordinatewise factors / conjugate inner

    static HolomorphicMap mobius(Complex a, double theta = 0.0);
    static HolomorphicMap affine(Complex a, Complex b);
    static HolomorphicMap poly(std::vector<Complex> coeffs);
    static HolomorphicMap coordinatewise(std::vector<HolomorphicMap> maps);
    static HolomorphicMap disk_conjugate(HolomorphicMap inner);

    // Kobayashi isometries get a pass on the image-margin rule during
    // certification; everything else must keep a safe distance from the
    // boundary on the validation grid.
    bool automorphism_primitive() const;

    std::string describe() const;
};

// Applies the map; the engine supplies the chart for conjugated maps and the
// dimension checks.  Non-finite outputs surface as-is (callers treat them as
// precision saturation).
Point apply_map(const DistanceEngine& engine, const HolomorphicMap& f, const Point& z);

struct MapCertificate {
    bool ok = false;
    double min_margin = 0.0;       // min boundary distance of sampled images
    double worst_expansion = 0.0;  // max of d(f(z),f(w)) - d(z,w) over pairs
    std::size_t grid_size = 0;
    std::string detail;
};

// Validates f(domain) inside domain on the probe grid (margin 1e-9 unless the
// map is an automorphism primitive) and spot-checks non-expansiveness.
MapCertificate certify_self_map(const DistanceEngine& engine, const HolomorphicMap& f,
                                int grid_count = 0);

}  // namespace horolab
