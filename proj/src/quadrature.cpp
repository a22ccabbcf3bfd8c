#include "mlwf/detail/quadrature.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace mlwf::detail {

namespace {

struct Rule {
    std::array<double, 16> x;
    std::array<double, 16> w;
};

const Rule& rule16() {
    static const Rule r = [] {
        using G = boost::math::quadrature::gauss<double, 16>;
        const auto& a = G::abscissa();
        const auto& wt = G::weights();
        Rule out{};
        // Boost stores the 8 non-negative abscissae; mirror them.
        for (std::size_t i = 0; i < 8; ++i) {
            out.x[7 - i] = -a[i];
            out.w[7 - i] = wt[i];
            out.x[8 + i] = a[i];
            out.w[8 + i] = wt[i];
        }
        return out;
    }();
    return r;
}

}  // namespace

void gauss_panel(double a, double b, Nodes& out) {
    const Rule& r = rule16();
    double h = 0.5 * (b - a), m = 0.5 * (a + b);
    for (int i = 0; i < 16; ++i) {
        out.x.push_back(m + h * r.x[i]);
        out.w.push_back(h * r.w[i]);
    }
}

Nodes composite_gauss(const std::vector<double>& breaks, double density) {
    std::vector<double> b = breaks;
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    Nodes out;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        double len = b[k + 1] - b[k];
        if (len <= 0) continue;
        int panels = std::max(1, static_cast<int>(std::ceil(density * len)));
        for (int p = 0; p < panels; ++p)
            gauss_panel(b[k] + len * p / panels, b[k] + len * (p + 1) / panels, out);
    }
    return out;
}

}  // namespace mlwf::detail
