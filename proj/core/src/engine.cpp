#include "horolab/engine.hpp"

#include <cmath>
#include <numbers>

#include "chain_cache.hpp"
#include "horolab/chain.hpp"
#include "horolab/error.hpp"

namespace horolab {

namespace {

double require_member(const Domain& d, const Point& z, const char* who) {
    if (!d.contains(z)) throw input_error(std::string(who) + ": point is not in the domain");
    return 0.0;
}

Complex cdot(const Point& z, const Point& w) {
    // Hermitian pairing sum z_i conj(w_i)
    Complex s = z[0] * std::conj(w[0]);
    if (z.dim() == 2) s += z[1] * std::conj(w[1]);
    return s;
}

double norm2(const Point& z) {
    double s = std::norm(z[0]);
    if (z.dim() == 2) s += std::norm(z[1]);
    return s;
}

}  // namespace

double disk_distance(Complex z, Complex w) {
    if (z == w) return 0.0;
    const double num = std::abs(1.0 - std::conj(w) * z) + std::abs(z - w);
    const double den = (1.0 - std::norm(z)) * (1.0 - std::norm(w));
    return 0.5 * std::log(num * num / den);
}

double half_plane_distance(Complex z, Complex w) {
    if (z == w) return 0.0;
    const double num = std::abs(z - w) + std::abs(z - std::conj(w));
    return 0.5 * std::log(num * num / (4.0 * z.imag() * w.imag()));
}

double unit_strip_distance(Complex z, Complex w) {
    if (z == w) return 0.0;
    const double pi = std::numbers::pi;
    // |sinh| of half the (conjugated) gaps; the identity
    // |sinh(u + i v')|^2 - |sinh(u + i v)|^2 = sin(pi ya) sin(pi yb)
    // keeps the log argument exact for far-apart points.
    const Complex g1 = 0.5 * pi * (z - w);
    const Complex g2 = 0.5 * pi * (z - std::conj(w));
    const double u = std::abs(g1.real());
    double s1, s2, scale;  // s_i = |sinh g_i| / scale
    if (u > 300.0) {
        // e^u / 2 dominates both moduli; factor it out before logging
        s1 = std::abs(Complex(1.0, 0.0) - std::exp(-2.0 * Complex(u, 0.0) + Complex(0.0, 2.0 * g1.imag())));
        s2 = std::abs(Complex(1.0, 0.0) - std::exp(-2.0 * Complex(u, 0.0) + Complex(0.0, 2.0 * g2.imag())));
        scale = u - std::log(2.0);
    } else {
        s1 = std::abs(std::sinh(g1));
        s2 = std::abs(std::sinh(g2));
        scale = 0.0;
    }
    const double cross = std::sin(pi * z.imag()) * std::sin(pi * w.imag());
    return 0.5 * (std::log((s1 + s2) * (s1 + s2) / cross)) + scale;
}

double ball_distance(const Point& z, const Point& w) {
    if (z == w) return 0.0;
    const Complex pairing = Complex(1.0, 0.0) - cdot(z, w);
    const double a2 = 1.0 - norm2(z), b2 = 1.0 - norm2(w);
    // |1 - <z,w>|^2 - (1-|z|^2)(1-|w|^2) = |z-w|^2 - (|z|^2|w|^2 - |<z,w>|^2)
    double zw2 = std::norm(z[0] - w[0]);
    if (z.dim() == 2) zw2 += std::norm(z[1] - w[1]);
    const double cs_gap = norm2(z) * norm2(w) - std::norm(cdot(z, w));
    const double D = std::max(0.0, zw2 - cs_gap);
    const double num = std::abs(pairing) + std::sqrt(D);
    return 0.5 * std::log(num * num / (a2 * b2));
}

Point ball_involution(const Point& a, const Point& z) {
    const double na2 = norm2(a);
    if (na2 == 0.0) {
        Point out = z;
        out[0] = -z[0];
        if (z.dim() == 2) out[1] = -z[1];
        return out;
    }
    const double s = std::sqrt(1.0 - na2);
    const Complex t = cdot(z, a) / na2;
    const Complex denom = Complex(1.0, 0.0) - cdot(z, a);
    Point out = z;
    for (int i = 0; i < z.dim(); ++i) {
        const Complex proj = t * a[i];
        const Complex perp = z[i] - proj;
        out[i] = (a[i] - proj - s * perp) / denom;
    }
    return out;
}

DistanceEngine DistanceEngine::make(Domain domain, ChainParams chain) {
    DistanceEngine e;
    e.chain_ = chain;
    switch (domain.kind()) {
        case DomainKind::Disk:
        case DomainKind::Ball:
            e.mode_ = EngineMode::Exact;
            break;
        case DomainKind::HalfPlane:
            e.mode_ = EngineMode::ConformalPullback;
            e.chart_ = std::make_shared<DiskChart>(half_plane_chart());
            break;
        case DomainKind::Strip:
            e.mode_ = EngineMode::ConformalPullback;
            e.chart_ = std::make_shared<DiskChart>(
                strip_chart(domain.strip_im_min(), domain.strip_im_max()));
            break;
        case DomainKind::ConformalSquare:
            e.mode_ = EngineMode::ConformalPullback;
            e.chart_ = std::make_shared<DiskChart>(square_chart(domain.square_half_side()));
            break;
        case DomainKind::Polydisc: {
            e.mode_ = EngineMode::Exact;
            for (int i = 0; i < domain.dimension(); ++i)
                e.factors_.push_back(DistanceEngine::make(Domain::disk(), chain));
            break;
        }
        case DomainKind::Product: {
            e.mode_ = EngineMode::Exact;
            for (const auto& f : domain.factors()) {
                DistanceEngine fe = DistanceEngine::make(f, chain);
                if (!fe.pointwise())
                    throw input_error("product: interval-valued factors are unsupported");
                if (fe.mode() == EngineMode::ConformalPullback)
                    e.mode_ = EngineMode::ConformalPullback;
                e.factors_.push_back(std::move(fe));
            }
            break;
        }
        case DomainKind::ConvexPolygon:
            e.mode_ = EngineMode::ChainApprox;
            e.chain_cache_ = std::make_shared<ChainGraphCache>();
            break;
    }
    e.domain_ = std::make_shared<const Domain>(std::move(domain));
    return e;
}

double DistanceEngine::distance(const Point& z, const Point& w) const {
    if (!pointwise()) {
        const Interval iv = distance_interval(z, w);
        if (iv.width() > chain_.tol)
            throw refinement_error("chain distance interval wider than engine tolerance",
                                   iv.lo, iv.hi);
        return iv.mid();
    }
    require_member(*domain_, z, "distance");
    require_member(*domain_, w, "distance");
    if (!z.same_dim(w)) throw input_error("distance: dimension mismatch");

    switch (domain_->kind()) {
        case DomainKind::Disk:
            return disk_distance(z[0], w[0]);
        case DomainKind::HalfPlane:
            return half_plane_distance(z[0], w[0]);
        case DomainKind::Strip: {
            const double a = domain_->strip_im_min(), b = domain_->strip_im_max();
            const double h = b - a;
            const Complex shift(0.0, a);
            return unit_strip_distance((z[0] - shift) / h, (w[0] - shift) / h);
        }
        case DomainKind::Ball:
            return ball_distance(z, w);
        case DomainKind::ConformalSquare:
            return disk_distance(chart_->to_disk(z[0]), chart_->to_disk(w[0]));
        case DomainKind::Polydisc: {
            double m = disk_distance(z[0], w[0]);
            if (domain_->dimension() == 2) m = std::max(m, disk_distance(z[1], w[1]));
            return m;
        }
        case DomainKind::Product: {
            double m = 0.0;
            int c = 0;
            for (const auto& fe : factors_) {
                m = std::max(m, fe.distance(Point(z[c]), Point(w[c])));
                ++c;
            }
            return m;
        }
        default:
            throw input_error("distance: unsupported kind");
    }
}

Interval DistanceEngine::distance_interval(const Point& z, const Point& w) const {
    if (pointwise()) {
        const double d = distance(z, w);
        return {d, d};
    }
    return chain_distance(*this, z, w, chain_.tol);
}

Interval DistanceEngine::infinitesimal(const Point& z, const Point& v) const {
    require_member(*domain_, z, "infinitesimal");
    if (!z.same_dim(v)) throw input_error("infinitesimal: dimension mismatch");

    switch (domain_->kind()) {
        case DomainKind::Disk: {
            const double k = std::abs(v[0]) / (1.0 - std::norm(z[0]));
            return {k, k};
        }
        case DomainKind::HalfPlane: {
            const double k = std::abs(v[0]) / (2.0 * z[0].imag());
            return {k, k};
        }
        case DomainKind::Strip: {
            const double a = domain_->strip_im_min(), b = domain_->strip_im_max();
            const double h = b - a, pi = std::numbers::pi;
            const double k = pi * std::abs(v[0]) /
                             (2.0 * h * std::sin(pi * (z[0].imag() - a) / h));
            return {k, k};
        }
        case DomainKind::Ball: {
            const double r2 = 1.0 - norm2(z);
            const double k2 = norm2(v) / r2 + std::norm(cdot(v, z)) / (r2 * r2);
            const double k = std::sqrt(k2);
            return {k, k};
        }
        case DomainKind::ConformalSquare: {
            const Complex q = chart_->to_disk(z[0]);
            const Complex dv = chart_->d_to_disk(z[0]) * v[0];
            const double k = std::abs(dv) / (1.0 - std::norm(q));
            return {k, k};
        }
        case DomainKind::Polydisc: {
            double k = std::abs(v[0]) / (1.0 - std::norm(z[0]));
            if (domain_->dimension() == 2)
                k = std::max(k, std::abs(v[1]) / (1.0 - std::norm(z[1])));
            return {k, k};
        }
        case DomainKind::Product: {
            double lo = 0.0, hi = 0.0;
            int c = 0;
            for (const auto& fe : factors_) {
                const Interval fi = fe.infinitesimal(Point(z[c]), Point(v[c]));
                lo = std::max(lo, fi.lo);
                hi = std::max(hi, fi.hi);
                ++c;
            }
            return {lo, hi};
        }
        case DomainKind::ConvexPolygon: {
            const double delta = domain_->boundary_distance(z);
            const double a = std::abs(v[0]);
            return {a / (2.0 * delta), a / delta};
        }
        default:
            throw input_error("infinitesimal: unsupported kind");
    }
}

}  // namespace horolab
