#include "horolab/conformal.hpp"

#include <cmath>
#include <numbers>

#include "horolab/error.hpp"

namespace horolab {

namespace {

constexpr Complex kI{0.0, 1.0};

// 20-node Gauss-Legendre rule on [0,1]; nodes/weights generated offline from
// the classical [-1,1] rule.
constexpr int kGL = 20;
constexpr double kGLx[kGL] = {
    0.0034357004074525577, 0.018014036361043095, 0.04388278587433708,
    0.08044151408889061,   0.1268340467699246,   0.1819731596367425,
    0.24456649902458644,   0.3131469556422902,   0.38610707442917747,
    0.46173673943325133,   0.5382632605667487,   0.6138929255708225,
    0.6868530443577098,    0.7554335009754136,   0.8180268403632576,
    0.8731659532300754,    0.9195584859111094,   0.9561172141256629,
    0.981985963638957,     0.9965642995925474};
constexpr double kGLw[kGL] = {
    0.008807003569576637, 0.02030071490019311, 0.03133602416705472,
    0.041638370788352336, 0.05096505990862013, 0.05909726598075912,
    0.06584431922458826,  0.07104805465919094, 0.07458649323630183,
    0.07637669356536289,  0.07637669356536289, 0.07458649323630183,
    0.07104805465919094,  0.06584431922458826, 0.05909726598075912,
    0.05096505990862013,  0.041638370788352336, 0.03133602416705472,
    0.02030071490019311,  0.008807003569576637};

// integral of dt/sqrt(1-t^4) along the straight segment [a, b], composite
// Gauss-Legendre with doubling until two successive estimates agree.
Complex lemniscate_segment(Complex a, Complex b) {
    auto integrand = [](Complex t) {
        return 1.0 / std::sqrt(Complex(1.0, 0.0) - t * t * t * t);
    };
    const Complex d = b - a;
    Complex prev{0.0, 0.0};
    for (int pieces = 1; pieces <= 64; pieces *= 2) {
        Complex acc{0.0, 0.0};
        for (int p = 0; p < pieces; ++p) {
            const Complex lo = a + d * (static_cast<double>(p) / pieces);
            const Complex step = d * (1.0 / pieces);
            Complex s{0.0, 0.0};
            for (int i = 0; i < kGL; ++i)
                s += kGLw[i] * integrand(lo + kGLx[i] * step);
            acc += s * step;
        }
        if (pieces > 1 && std::abs(acc - prev) <= 1e-14 * (1.0 + std::abs(acc)))
            return acc;
        prev = acc;
    }
    return prev;
}

}  // namespace

double lemniscate_constant() {
    // int_0^1 dt/sqrt(1-t^4) = B(1/4, 1/2)/4 = Gamma(1/4)^2 / (4 sqrt(2 pi));
    // the quadrature used for interior segments loses ~1e-3 at this endpoint
    // singularity, so the constant comes from the closed form instead.
    static const double g = std::tgamma(0.25);
    static const double value = g * g / (4.0 * std::sqrt(2.0 * std::numbers::pi));
    return value;
}

DiskChart half_plane_chart() {
    DiskChart c;
    c.to_disk = [](Complex w) { return (w - kI) / (w + kI); };
    c.from_disk = [](Complex q) { return kI * (1.0 + q) / (1.0 - q); };
    c.d_to_disk = [](Complex w) {
        const Complex d = w + kI;
        return 2.0 * kI / (d * d);
    };
    return c;
}

DiskChart strip_chart(double im_min, double im_max) {
    const double pi = std::numbers::pi;
    const double height = im_max - im_min;
    DiskChart c;
    c.to_disk = [=](Complex z) {
        const Complex w = std::exp(pi * (z - Complex(0.0, im_min)) / height);
        return (w - kI) / (w + kI);
    };
    c.from_disk = [=](Complex q) {
        const Complex w = kI * (1.0 + q) / (1.0 - q);
        return std::log(w) * (height / pi) + Complex(0.0, im_min);
    };
    c.d_to_disk = [=](Complex z) {
        const Complex w = std::exp(pi * (z - Complex(0.0, im_min)) / height);
        const Complex d = w + kI;
        return (pi / height) * w * 2.0 * kI / (d * d);
    };
    return c;
}

DiskChart square_chart(double half_side) {
    const double pi = std::numbers::pi;
    // scale * e^{i pi/4} * I(1) has modulus half_side * sqrt(2): disk
    // prevertices {1, i, -1, -i} land on the square corners.
    const double scale = half_side * std::sqrt(2.0) / lemniscate_constant();
    const Complex rot = std::polar(1.0, pi / 4.0);
    const Complex cfac = scale * rot;

    auto fwd = [cfac](Complex q) { return cfac * lemniscate_segment({0.0, 0.0}, q); };
    auto dfwd = [cfac](Complex q) {
        return cfac / std::sqrt(Complex(1.0, 0.0) - q * q * q * q);
    };

    // Newton with continuation: walk 0 -> z in a few steps, tracking the
    // preimage; each leg starts from the previous solution.
    auto inv = [fwd, dfwd, half_side](Complex z) {
        const int legs = 8;
        Complex q{0.0, 0.0};
        for (int leg = 1; leg <= legs; ++leg) {
            const Complex target = z * (static_cast<double>(leg) / legs);
            for (int it = 0; it < 40; ++it) {
                const Complex r = fwd(q) - target;
                if (std::abs(r) <= 1e-14 * (1.0 + half_side)) break;
                Complex step = r / dfwd(q);
                // stay strictly inside the disk; shrink instead of leaving
                while (std::abs(q - step) >= 1.0 - 1e-15) step *= 0.5;
                q -= step;
            }
        }
        return q;
    };

    DiskChart c;
    c.to_disk = inv;
    c.from_disk = fwd;
    c.d_to_disk = [dfwd, inv](Complex z) { return 1.0 / dfwd(inv(z)); };
    return c;
}

}  // namespace horolab
