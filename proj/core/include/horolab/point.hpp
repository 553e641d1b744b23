#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "horolab/error.hpp"

namespace horolab {

using Complex = std::complex<double>;

/// A point of a one- or two-dimensional complex domain.  Value type, cheap to
/// copy.  Coordinates beyond dim() are kept at zero and must not be read.
class Point {
  public:
    Point() : dim_(1), z_{Complex(0.0, 0.0), Complex(0.0, 0.0)} {}
    explicit Point(Complex z) : dim_(1), z_{z, Complex(0.0, 0.0)} {}
    Point(Complex z0, Complex z1) : dim_(2), z_{z0, z1} {}

    int dim() const { return dim_; }
    Complex operator[](int i) const { return z_[static_cast<size_t>(i)]; }
    Complex& operator[](int i) { return z_[static_cast<size_t>(i)]; }

    /// max_i |z_i|; the norm used for the radius clip of exhaustions.
    double max_abs() const {
        double m = std::abs(z_[0]);
        if (dim_ == 2) m = std::max(m, std::abs(z_[1]));
        return m;
    }

    /// max_i |z_i - w_i|; coordinate-sup Euclidean gap.
    double sup_dist(const Point& w) const {
        double m = std::abs(z_[0] - w.z_[0]);
        if (dim_ == 2) m = std::max(m, std::abs(z_[1] - w.z_[1]));
        return m;
    }

    bool same_dim(const Point& w) const { return dim_ == w.dim_; }

    friend bool operator==(const Point& a, const Point& b) {
        return a.dim_ == b.dim_ && a.z_ == b.z_;
    }

  private:
    int dim_;
    std::array<Complex, 2> z_;
};

/// Closed interval [lo, hi]; collapses to a single value for engines that
/// evaluate the metric pointwise.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

inline std::string format_point(const Point& p) {
    auto one = [](Complex z) {
        return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
    };
    if (p.dim() == 1) return one(p[0]);
    return one(p[0]) + one(p[1]);
}

}  // namespace horolab
