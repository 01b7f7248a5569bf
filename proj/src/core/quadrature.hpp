#pragma once

#include <cstddef>
#include <vector>

namespace skybus::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [a, b].
Rule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

// Gauss-Legendre panels between consecutive breakpoints, n_per_panel nodes each.
Rule composite_gauss_legendre(const std::vector<double>& breakpoints, std::size_t n_per_panel);

// Uniform periodic trapezoid on [0, 2pi).
Rule periodic_trapezoid(std::size_t n);

// Sorted, de-duplicated breakpoints on [lo, hi]. Each length scale s contributes
// the geometric ladder lo+s/4, lo+s/2, lo+s, lo+2s, ... and each (center, width)
// feature contributes center-2w, center-w, center, center+w, center+2w.
struct Feature {
    double center;
    double width;
};
std::vector<double> breakpoints(double lo, double hi, const std::vector<double>& scales,
                                const std::vector<Feature>& features = {});

}  // namespace skybus::quad
