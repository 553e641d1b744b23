#pragma once

#include <functional>

#include "horolab/domain.hpp"
#include "horolab/point.hpp"

namespace horolab {

/// Biholomorphism between a planar domain and the unit disk.  to_disk and
/// from_disk are mutually inverse on the open sets; d_to_disk is the complex
/// derivative of to_disk (used for metric pullback).
struct DiskChart {
    std::function<Complex(Complex)> to_disk;
    std::function<Complex(Complex)> from_disk;
    std::function<Complex(Complex)> d_to_disk;
};

/// Cayley chart of the upper half plane, w -> (w - i)/(w + i).
DiskChart half_plane_chart();

/// exp-then-Cayley chart of the strip {im_min < Im z < im_max}.  Accurate for
/// moderate |Re z|; distance computations on strips use a direct formula
/// instead and never roundtrip through this chart.
DiskChart strip_chart(double im_min, double im_max);

/// Square (-h, h)^2 mapped from the disk by z -> c * e^{i pi/4} I(z) with
/// I(z) = integral_0^z dt / sqrt(1 - t^4); the inverse runs Newton with path
/// continuation.  Accurate away from the four corner prevertices.
DiskChart square_chart(double half_side);

/// integral_0^1 dt / sqrt(1 - t^4); half the diagonal of the image square of
/// the unnormalized map.
double lemniscate_constant();

}  // namespace horolab
