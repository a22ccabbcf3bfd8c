#pragma once

#include <vector>

namespace mlwf::detail {

struct Nodes {
    std::vector<double> x;
    std::vector<double> w;
};

// Composite 16-point Gauss-Legendre rule on the pieces between consecutive
// breakpoints (sorted, duplicates ignored). Each piece gets
// max(1, ceil(density * length)) panels.
Nodes composite_gauss(const std::vector<double>& breaks, double density);

// Single 16-point panel on [a, b], appended to `out`.
void gauss_panel(double a, double b, Nodes& out);

}  // namespace mlwf::detail
