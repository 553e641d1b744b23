#include "horolab/domain.hpp"

#include <algorithm>
#include <cmath>

namespace horolab {

namespace {

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

}  // namespace

Domain Domain::disk() {
    Domain d;
    d.kind_ = DomainKind::Disk;
    return d;
}

Domain Domain::half_plane() {
    Domain d;
    d.kind_ = DomainKind::HalfPlane;
    d.bounded_ = false;
    return d;
}

Domain Domain::strip(double im_min, double im_max) {
    if (!(im_min < im_max))
        throw input_error("strip: im_min must be below im_max");
    Domain d;
    d.kind_ = DomainKind::Strip;
    d.bounded_ = false;
    d.im_min_ = im_min;
    d.im_max_ = im_max;
    return d;
}

Domain Domain::ball(int dim) {
    if (dim < 1 || dim > 2) throw input_error("ball: dimension must be 1 or 2");
    Domain d;
    d.kind_ = DomainKind::Ball;
    d.dim_ = dim;
    return d;
}

Domain Domain::polydisc(int dim) {
    if (dim < 1 || dim > 2) throw input_error("polydisc: dimension must be 1 or 2");
    Domain d;
    d.kind_ = DomainKind::Polydisc;
    d.dim_ = dim;
    return d;
}

Domain Domain::product(std::vector<Domain> factors) {
    if (factors.empty()) throw input_error("product: needs at least one factor");
    int dim = 0;
    bool convex = true, bounded = true;
    for (const auto& f : factors) {
        if (f.dimension() != 1)
            throw input_error("product: factors must be planar");
        dim += f.dimension();
        convex = convex && f.convex();
        bounded = bounded && f.bounded();
    }
    if (dim > 2) throw input_error("product: total dimension above 2 is unsupported");
    Domain d;
    d.kind_ = DomainKind::Product;
    d.dim_ = dim;
    d.convex_ = convex;
    d.bounded_ = bounded;
    d.factors_ = std::move(factors);
    return d;
}

Domain Domain::convex_polygon(std::vector<Complex> vertices) {
    if (vertices.size() < 8)
        throw input_error("convex_polygon: boundary polyline needs at least 8 vertices");
    const size_t n = vertices.size();
    double area2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Complex a = vertices[i], b = vertices[(i + 1) % n];
        area2 += a.real() * b.imag() - b.real() * a.imag();
    }
    if (area2 < 0.0) std::reverse(vertices.begin(), vertices.end());
    // convexity: no sign flip across consecutive turns, zeros allowed
    for (size_t i = 0; i < n; ++i) {
        const double c = cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
        if (c < -1e-12)
            throw input_error("convex_polygon: vertex polyline is not convex");
    }
    Domain d;
    d.kind_ = DomainKind::ConvexPolygon;
    d.vertices_ = std::move(vertices);
    return d;
}

Domain Domain::conformal_square(double side) {
    if (!(side > 0.0)) throw input_error("conformal_square: side must be positive");
    Domain d;
    d.kind_ = DomainKind::ConformalSquare;
    d.half_side_ = 0.5 * side;
    return d;
}

std::string Domain::describe() const {
    switch (kind_) {
        case DomainKind::Disk: return "disk";
        case DomainKind::HalfPlane: return "half_plane";
        case DomainKind::Strip:
            return "strip(" + std::to_string(im_min_) + "," + std::to_string(im_max_) + ")";
        case DomainKind::Ball: return "ball(" + std::to_string(dim_) + ")";
        case DomainKind::Polydisc: return "polydisc(" + std::to_string(dim_) + ")";
        case DomainKind::Product: {
            std::string s = "product(";
            for (size_t i = 0; i < factors_.size(); ++i) {
                if (i) s += ",";
                s += factors_[i].describe();
            }
            return s + ")";
        }
        case DomainKind::ConvexPolygon:
            return "convex_polygon(" + std::to_string(vertices_.size()) + " vertices)";
        case DomainKind::ConformalSquare:
            return "square(side " + std::to_string(2.0 * half_side_) + ")";
    }
    return "?";
}

double Domain::planar_boundary_distance(Complex z) const {
    switch (kind_) {
        case DomainKind::Disk: return 1.0 - std::abs(z);
        case DomainKind::HalfPlane: return z.imag();
        case DomainKind::Strip: return std::min(z.imag() - im_min_, im_max_ - z.imag());
        case DomainKind::ConformalSquare:
            return std::min(half_side_ - std::abs(z.real()), half_side_ - std::abs(z.imag()));
        case DomainKind::ConvexPolygon: {
            // signed by membership: positive inside, negative outside
            const size_t n = vertices_.size();
            bool inside = true;
            double dist = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < n; ++i) {
                const Complex a = vertices_[i], b = vertices_[(i + 1) % n];
                if (cross(a, b, z) <= 0.0) inside = false;
                dist = std::min(dist, point_segment_distance(z, a, b));
            }
            return inside ? dist : -dist;
        }
        default:
            throw input_error("planar distance on a non-planar kind");
    }
}

double Domain::planar_closure_gap(Complex z) const {
    const double d = planar_boundary_distance(z);
    return d >= 0.0 ? 0.0 : -d;
}

bool Domain::contains(const Point& z) const {
    if (z.dim() != dim_) return false;
    switch (kind_) {
        case DomainKind::Ball: {
            double n2 = std::norm(z[0]);
            if (dim_ == 2) n2 += std::norm(z[1]);
            return n2 < 1.0;
        }
        case DomainKind::Polydisc: {
            for (int i = 0; i < dim_; ++i)
                if (!(std::abs(z[i]) < 1.0)) return false;
            return true;
        }
        case DomainKind::Product: {
            int c = 0;
            for (const auto& f : factors_) {
                if (!f.contains(Point(z[c]))) return false;
                ++c;
            }
            return true;
        }
        default:
            return planar_boundary_distance(z[0]) > 0.0;
    }
}

double Domain::boundary_distance(const Point& z) const {
    if (!contains(z))
        throw input_error("boundary_distance: point is not in the open domain");
    switch (kind_) {
        case DomainKind::Ball: {
            double n2 = std::norm(z[0]);
            if (dim_ == 2) n2 += std::norm(z[1]);
            return 1.0 - std::sqrt(n2);
        }
        case DomainKind::Polydisc: {
            double m = 1.0 - std::abs(z[0]);
            if (dim_ == 2) m = std::min(m, 1.0 - std::abs(z[1]));
            return m;
        }
        case DomainKind::Product: {
            double m = std::numeric_limits<double>::infinity();
            int c = 0;
            for (const auto& f : factors_) {
                m = std::min(m, f.boundary_distance(Point(z[c])));
                ++c;
            }
            return m;
        }
        default:
            return planar_boundary_distance(z[0]);
    }
}

double Domain::closure_gap(const Point& z) const {
    switch (kind_) {
        case DomainKind::Ball: {
            double n2 = std::norm(z[0]);
            if (dim_ == 2) n2 += std::norm(z[1]);
            return std::max(0.0, std::sqrt(n2) - 1.0);
        }
        case DomainKind::Polydisc: {
            double g = std::max(0.0, std::abs(z[0]) - 1.0);
            if (dim_ == 2) g = std::max(g, std::abs(z[1]) - 1.0);
            return g;
        }
        case DomainKind::Product: {
            double g = 0.0;
            int c = 0;
            for (const auto& f : factors_) {
                g = std::max(g, f.closure_gap(Point(z[c])));
                ++c;
            }
            return g;
        }
        default:
            return planar_closure_gap(z[0]);
    }
}

int Domain::exhaustion_index(const Point& z) const {
    const double bd = boundary_distance(z);  // validates membership
    const double r = z.max_abs();
    for (int j = 1; j <= exhaustion_.max_level; ++j) {
        if (bd >= exhaustion_.margin(j) && r <= exhaustion_.radius(j)) return j;
    }
    throw numeric_error("exhaustion_index: point escapes every tracked level");
}

bool Domain::in_level(const Point& z, int j) const {
    if (!contains(z)) return false;
    return boundary_distance(z) >= exhaustion_.margin(j) &&
           z.max_abs() <= exhaustion_.radius(j);
}

Point Domain::anchor() const {
    switch (kind_) {
        case DomainKind::HalfPlane: return Point(Complex(0.0, 1.0));
        case DomainKind::Strip: return Point(Complex(0.0, 0.5 * (im_min_ + im_max_)));
        case DomainKind::ConvexPolygon: {
            Complex c(0.0, 0.0);
            for (const auto& v : vertices_) c += v;
            return Point(c / static_cast<double>(vertices_.size()));
        }
        case DomainKind::Product: {
            const Point a0 = factors_[0].anchor();
            if (dim_ == 1) return a0;
            return Point(a0[0], factors_[1].anchor()[0]);
        }
        default:
            return dim_ == 1 ? Point(Complex(0.0, 0.0))
                             : Point(Complex(0.0, 0.0), Complex(0.0, 0.0));
    }
}

Window Domain::probe_window() const {
    auto planar_rect = [this]() -> Window::Rect {
        switch (kind_) {
            case DomainKind::Disk: return {-1.0, 1.0, -1.0, 1.0};
            case DomainKind::HalfPlane: return {-3.0, 3.0, 0.0, 3.0};
            case DomainKind::Strip: return {-3.0, 3.0, im_min_, im_max_};
            case DomainKind::ConformalSquare:
                return {-half_side_, half_side_, -half_side_, half_side_};
            case DomainKind::ConvexPolygon: {
                double re0 = 1e300, re1 = -1e300, im0 = 1e300, im1 = -1e300;
                for (const auto& v : vertices_) {
                    re0 = std::min(re0, v.real());
                    re1 = std::max(re1, v.real());
                    im0 = std::min(im0, v.imag());
                    im1 = std::max(im1, v.imag());
                }
                return {re0, re1, im0, im1};
            }
            default: return {-1.0, 1.0, -1.0, 1.0};
        }
    };
    Window w;
    switch (kind_) {
        case DomainKind::Ball:
        case DomainKind::Polydisc:
            for (int i = 0; i < dim_; ++i) w.rects.push_back({-1.0, 1.0, -1.0, 1.0});
            return w;
        case DomainKind::Product:
            for (const auto& f : factors_)
                w.rects.push_back(f.probe_window().rects[0]);
            return w;
        default:
            w.rects.push_back(planar_rect());
            return w;
    }
}

const std::vector<Domain>& Domain::factors() const {
    if (kind_ != DomainKind::Product)
        throw input_error("factors(): not a product domain");
    return factors_;
}

const std::vector<Complex>& Domain::vertices() const {
    if (kind_ != DomainKind::ConvexPolygon)
        throw input_error("vertices(): not a polygon domain");
    return vertices_;
}

double Domain::strip_im_min() const {
    if (kind_ != DomainKind::Strip) throw input_error("strip bounds on a non-strip");
    return im_min_;
}

double Domain::strip_im_max() const {
    if (kind_ != DomainKind::Strip) throw input_error("strip bounds on a non-strip");
    return im_max_;
}

double Domain::square_half_side() const {
    if (kind_ != DomainKind::ConformalSquare)
        throw input_error("square_half_side(): not a conformal square");
    return half_side_;
}

Point project_to_boundary(const Domain& d, const Point& z) {
    auto planar = [](const Domain& dom, Complex w) -> Complex {
        switch (dom.kind()) {
            case DomainKind::Disk: {
                const double a = std::abs(w);
                return a == 0.0 ? Complex(1.0, 0.0) : w / a;
            }
            case DomainKind::HalfPlane: return {w.real(), 0.0};
            case DomainKind::Strip: {
                const double mid = 0.5 * (dom.strip_im_min() + dom.strip_im_max());
                return {w.real(), w.imag() < mid ? dom.strip_im_min() : dom.strip_im_max()};
            }
            case DomainKind::ConformalSquare: {
                const double h = dom.square_half_side();
                double x = w.real(), y = w.imag();
                if (h - std::abs(x) < h - std::abs(y))
                    x = std::copysign(h, x);
                else
                    y = std::copysign(h, y);
                return {x, y};
            }
            case DomainKind::ConvexPolygon: {
                const auto& vs = dom.vertices();
                double best = 1e300;
                Complex bp = vs[0];
                for (size_t i = 0; i < vs.size(); ++i) {
                    const Complex a = vs[i], b = vs[(i + 1) % vs.size()];
                    const Complex ab = b - a;
                    const double len2 = std::norm(ab);
                    double t = len2 == 0.0 ? 0.0
                        : std::clamp(((w - a).real() * ab.real() + (w - a).imag() * ab.imag()) / len2,
                                     0.0, 1.0);
                    const Complex q = a + t * ab;
                    if (std::abs(w - q) < best) {
                        best = std::abs(w - q);
                        bp = q;
                    }
                }
                return bp;
            }
            default: throw input_error("project_to_boundary: unsupported planar kind");
        }
    };

    switch (d.kind()) {
        case DomainKind::Ball: {
            double n = std::sqrt(std::norm(z[0]) + (z.dim() == 2 ? std::norm(z[1]) : 0.0));
            if (n == 0.0) return z.dim() == 1 ? Point(Complex(1, 0)) : Point(Complex(1, 0), Complex(0, 0));
            return z.dim() == 1 ? Point(z[0] / n) : Point(z[0] / n, z[1] / n);
        }
        case DomainKind::Polydisc: {
            // project every coordinate that is near its own boundary
            Point out = z;
            double worst = 0.0;
            for (int i = 0; i < z.dim(); ++i) worst = std::max(worst, std::abs(z[i]));
            for (int i = 0; i < z.dim(); ++i) {
                const double a = std::abs(z[i]);
                if (a > 0.0 && a >= worst - 1e-9) out[i] = z[i] / a;
            }
            return out;
        }
        case DomainKind::Product: {
            Point out = z;
            double worst = 1e300;
            int c = 0;
            std::vector<double> gaps;
            for (const auto& f : d.factors()) {
                const double g = f.contains(Point(z[c])) ? f.boundary_distance(Point(z[c])) : 0.0;
                gaps.push_back(g);
                worst = std::min(worst, g);
                ++c;
            }
            c = 0;
            for (const auto& f : d.factors()) {
                if (gaps[static_cast<size_t>(c)] <= worst + 1e-9)
                    out[c] = planar(f, z[c]);
                ++c;
            }
            return out;
        }
        default:
            return Point(planar(d, z[0]));
    }
}

}  // namespace horolab
