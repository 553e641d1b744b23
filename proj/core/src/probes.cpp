#include "horolab/probes.hpp"

#include "horolab/error.hpp"

namespace horolab {

double halton(std::size_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % static_cast<std::size_t>(base));
        index /= static_cast<std::size_t>(base);
    }
    return r;
}

std::vector<Point> probe_grid(const Domain& domain, int count, double margin) {
    if (count <= 0) count = domain.dimension() == 1 ? 64 : 256;
    const Window win = domain.probe_window();
    constexpr int kBases[4] = {2, 3, 5, 7};

    std::vector<Point> out;
    const std::size_t budget = static_cast<std::size_t>(count) * 400;
    for (std::size_t i = 1; i <= budget && out.size() < static_cast<size_t>(count);
         ++i) {
        std::array<Complex, 2> c{};
        for (int k = 0; k < domain.dimension(); ++k) {
            const auto& r = win.rects[static_cast<size_t>(k)];
            const double x = r.re0 + halton(i, kBases[2 * k]) * (r.re1 - r.re0);
            const double y = r.im0 + halton(i, kBases[2 * k + 1]) * (r.im1 - r.im0);
            c[static_cast<size_t>(k)] = Complex(x, y);
        }
        const Point p = domain.dimension() == 1 ? Point(c[0]) : Point(c[0], c[1]);
        if (!domain.contains(p) || domain.boundary_distance(p) < margin) continue;
        out.push_back(p);
    }
    if (out.size() < static_cast<size_t>(count))
        throw numeric_error("probe grid: domain too thin for the requested count");
    return out;
}

}  // namespace horolab
