#include "horolab/holomap.hpp"

#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "horolab/error.hpp"
#include "horolab/probes.hpp"

namespace horolab {

HolomorphicMap HolomorphicMap::mobius(Complex a, double theta) {
    if (std::abs(a) >= 1.0)
        throw input_error("mobius map: |a| must be below 1");
    HolomorphicMap f;
    f.kind = Kind::Mobius;
    f.a = a;
    f.theta = theta;
    return f;
}

HolomorphicMap HolomorphicMap::affine(Complex a, Complex b) {
    HolomorphicMap f;
    f.kind = Kind::Affine;
    f.a = a;
    f.b = b;
    return f;
}

HolomorphicMap HolomorphicMap::poly(std::vector<Complex> coeffs) {
    if (coeffs.empty()) throw input_error("poly map: empty coefficient list");
    HolomorphicMap f;
    f.kind = Kind::Poly;
    f.coeffs = std::move(coeffs);
    return f;
}

HolomorphicMap HolomorphicMap::coordinatewise(std::vector<HolomorphicMap> maps) {
    if (maps.empty() || maps.size() > 2)
        throw input_error("coordinatewise map: needs one or two factors");
    HolomorphicMap f;
    f.kind = Kind::Coordinatewise;
    f.parts = std::move(maps);
    return f;
}

HolomorphicMap HolomorphicMap::disk_conjugate(HolomorphicMap inner) {
    HolomorphicMap f;
    f.kind = Kind::DiskConjugate;
    f.parts.push_back(std::move(inner));
    return f;
}

bool HolomorphicMap::automorphism_primitive() const {
    switch (kind) {
        case Kind::Mobius: return true;
        case Kind::Affine: return std::abs(std::abs(a) - 1.0) < 1e-15 && b == Complex{};
        case Kind::Poly: return false;
        case Kind::Coordinatewise:
        case Kind::DiskConjugate:
            for (const auto& p : parts)
                if (!p.automorphism_primitive()) return false;
            return true;
    }
    return false;
}

std::string HolomorphicMap::describe() const {
    switch (kind) {
        case Kind::Mobius:
            return fmt::format("mobius(a={}+{}i, theta={})", a.real(), a.imag(), theta);
        case Kind::Affine:
            return fmt::format("affine({}+{}i, {}+{}i)", a.real(), a.imag(), b.real(),
                               b.imag());
        case Kind::Poly: return fmt::format("poly(degree {})", coeffs.size() - 1);
        case Kind::Coordinatewise: {
            std::string s = "coordinatewise(";
            for (std::size_t i = 0; i < parts.size(); ++i)
                s += (i ? ", " : "") + parts[i].describe();
            return s + ")";
        }
        case Kind::DiskConjugate:
            return "conjugate(" + parts[0].describe() + ")";
    }
    return "?";
}

namespace {

Complex apply_planar(const HolomorphicMap& f, Complex z) {
    switch (f.kind) {
        case HolomorphicMap::Kind::Mobius:
            return std::polar(1.0, f.theta) * (z + f.a) / (1.0 + std::conj(f.a) * z);
        case HolomorphicMap::Kind::Affine: return f.a * z + f.b;
        case HolomorphicMap::Kind::Poly: {
            Complex acc{0.0, 0.0};
            for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = acc * z + f.coeffs[i];
            return acc;
        }
        default:
            throw input_error("map: nested structural kinds are not planar");
    }
}

}  // namespace

Point apply_map(const DistanceEngine& engine, const HolomorphicMap& f, const Point& z) {
    const int dim = engine.domain().dimension();
    if (z.dim() != dim) throw input_error("map: point dimension mismatch");

    switch (f.kind) {
        case HolomorphicMap::Kind::Coordinatewise: {
            if (static_cast<int>(f.parts.size()) != dim)
                throw input_error("map: coordinatewise arity mismatch");
            const auto& fe = engine.factor_engines();
            if (fe.size() != f.parts.size())
                throw input_error("map: coordinatewise needs a product domain");
            if (dim == 1) return apply_map(fe[0], f.parts[0], Point(z[0]));
            return Point(apply_map(fe[0], f.parts[0], Point(z[0]))[0],
                         apply_map(fe[1], f.parts[1], Point(z[1]))[0]);
        }
        case HolomorphicMap::Kind::DiskConjugate: {
            const DiskChart* chart = engine.chart();
            if (!chart)
                throw input_error("map: disk conjugation needs a charted domain");
            const Complex q = chart->to_disk(z[0]);
            const Complex fq = apply_planar(f.parts[0], q);
            // |fq| >= 1 only through rounding; the chart is singular there and
            // a hair past the circle it can flip across a log branch cut, so
            // report saturation instead of a finite garbage point.
            if (std::abs(fq) >= 1.0) {
                constexpr double inf = std::numeric_limits<double>::infinity();
                return Point(Complex(inf, inf));
            }
            return Point(chart->from_disk(fq));
        }
        default: {
            if (dim != 1)
                throw input_error("map: planar primitive on a two-dimensional domain");
            return Point(apply_planar(f, z[0]));
        }
    }
}

MapCertificate certify_self_map(const DistanceEngine& engine, const HolomorphicMap& f,
                                int grid_count) {
    const Domain& dom = engine.domain();
    MapCertificate cert;
    const std::vector<Point> grid = probe_grid(dom, grid_count);
    cert.grid_size = grid.size();

    double min_margin = 1e300;
    std::vector<Point> images;
    for (const Point& z : grid) {
        const Point w = apply_map(engine, f, z);
        bool finite = true;
        for (int i = 0; i < w.dim(); ++i)
            if (!std::isfinite(w[i].real()) || !std::isfinite(w[i].imag()))
                finite = false;
        if (!finite || !dom.contains(w)) {
            cert.detail = "image left the domain at " + format_point(z);
            cert.min_margin = 0.0;
            return cert;
        }
        min_margin = std::min(min_margin, dom.boundary_distance(w));
        images.push_back(w);
    }
    cert.min_margin = min_margin;
    if (min_margin < 1e-9 && !f.automorphism_primitive()) {
        cert.detail = "image margin below 1e-9 and the map is not an automorphism";
        return cert;
    }

    // non-expansion spot-check on strided grid pairs
    double worst = 0.0;
    const std::size_t stride = std::max<std::size_t>(1, grid.size() / 12);
    for (std::size_t i = 0; i < grid.size(); i += stride) {
        for (std::size_t j = i + stride; j < grid.size(); j += stride) {
            const double before = engine.distance(grid[i], grid[j]);
            const double after = engine.distance(images[i], images[j]);
            worst = std::max(worst, after - before);
        }
    }
    cert.worst_expansion = worst;
    if (worst > 1e-9) {
        cert.detail = "sampled pair expanded the Kobayashi distance";
        return cert;
    }
    cert.ok = true;
    return cert;
}

}  // namespace horolab
