#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mlwf/coeffs.hpp"

namespace mlwf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Positive weight on Z^d. Either the polynomial weight <n>^s = (1 + |n|^2)^(s/2)
// or a table on a box |n_j| <= radius.
class Weight {
public:
    static Weight polynomial(double s);
    static Weight tabulated(int dim, int radius, std::vector<double> values, std::string label = "tabulated");
    static Weight tabulate(int dim, int radius, const std::function<double(const Index&)>& fn,
                           std::string label = "tabulated");

    double operator()(const Index& n, int dim) const;
    bool is_polynomial() const { return polynomial_; }
    double exponent() const { return s_; }
    // Largest box radius the weight is defined on (unbounded for polynomial weights).
    int radius() const { return polynomial_ ? std::numeric_limits<int>::max() : radius_; }
    const std::string& label() const { return label_; }

private:
    bool polynomial_ = true;
    double s_ = 0.0;
    int dim_ = 0;
    int radius_ = 0;
    std::vector<double> table_;
    std::string label_;
};

// (sum_n |w(n) a_n|^q)^(1/q), or the weighted sup for q = inf.
double weighted_norm(const CoeffArray& a, const Weight& w, double q);

enum class Membership { convergent, divergent, inconclusive };
const char* to_string(Membership m);

struct MembershipReport {
    std::vector<int> levels;
    std::vector<double> norms;
    std::vector<double> sums;  // sum of |w a|^q (the max for q = inf)
    Membership verdict = Membership::inconclusive;
};

// Norms of truncations at increasing radius. Convergent if the last relative
// increment of the norm is below 1e-3; divergent if the increments of the
// q-power sums do not decrease; inconclusive otherwise.
MembershipReport membership_estimate(const std::function<CoeffArray(int)>& source, const Weight& w, double q,
                                     std::vector<int> levels = {64, 128, 256, 512});

// sum_n f_n phi_{-n} over the common box.
cplx dual_pairing(const CoeffArray& f, const CoeffArray& phi);

struct ModerateReport {
    int radius = 0;
    double constant = 0.0;       // sup over |m|,|n| <= R of w(m+n) / (w(m) nu(n))
    double half_constant = 0.0;  // same at R/2
    bool stable = false;         // constant / half_constant <= 1.05
};

// Exhaustive search over the box |m_j|, |n_j| <= radius.
ModerateReport is_nu_moderate(const Weight& w, const Weight& nu, int radius, int dim);
double moderate_constant(const Weight& w, const Weight& nu, int radius, int dim);

// Coefficients of the window on `grid`, truncated where the l1 tail drops below `tail`.
CoeffArray window_coefficients(const CutoffWindow& window, const Grid& grid, double tail = 1e-12);

// Coefficients of phi * f on |n| <= out_radius by discrete convolution with the
// window coefficients. Fails when f does not reach out_radius + window bandwidth.
CoeffArray localize(const CoeffArray& f, const CutoffWindow& window, const Grid& grid, int out_radius);

}  // namespace mlwf
