#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlwf/spaces.hpp"

namespace mlwf {

enum class ConvolutionMethod { automatic, direct, fft };

struct ConvolutionResult {
    CoeffArray product;
    // Per entry of `product`: bound on the mass missed because the inputs were
    // truncated, sup|f1| * sum over j in box2 with n - j outside box1 of |f2_j|.
    std::vector<double> tail_bound;
    std::vector<unsigned char> flagged;  // tail_bound > flag_threshold
    int reliable_radius = -1;            // largest r with no flagged entry in |n| <= r
};

inline constexpr double kTailFlag = 1e-8;

// (f1 * f2)_n = sum_j f1_{n-j} f2_j for |n_j| <= out_radius. The direct sum is used
// below 64 coefficients per axis, a zero-padded FFT above.
ConvolutionResult coeff_convolution(const CoeffArray& f1, const CoeffArray& f2, int out_radius,
                                    ConvolutionMethod method = ConvolutionMethod::automatic);

// Full linear convolution (radius r1 + r2), no truncation error.
CoeffArray full_convolution(const CoeffArray& f1, const CoeffArray& f2,
                            ConvolutionMethod method = ConvolutionMethod::automatic);

// 1/q = 1/q1 + 1/q2 - 1; throws when the exponents admit no q >= 1.
double young_exponent(double q1, double q2);

struct YoungReport {
    double q1 = 1, q2 = 1, q = 1;
    double lhs = 0;            // ||f1 f2||_{w,q}
    double norm1 = 0;          // ||f1||_{w,q1}
    double norm2 = 0;          // ||f2||_{nu,q2}
    double constant = 0;       // moderate constant covering both supports
    double rhs = 0;            // constant * norm1 * norm2
    bool holds = false;
};

YoungReport young_bound_check(const CoeffArray& f1, const CoeffArray& f2, const Weight& w, const Weight& nu,
                              double q1, double q2);

// Weights for products in Sobolev-type spaces: refuses s1 + s2 < 0 and
// s > min(s1, s2); returns w = <.>^min(s1,s2), nu = <.>^max(s1,s2).
struct ProductWeights {
    Weight w;
    Weight nu;
};
ProductWeights sobolev_product_weights(double s1, double s2, double s);

struct LocalizationReport {
    double lhs = 0;             // ||phi f||_{w,q}
    double window_norm = 0;     // ||phi||_{l1_nu}
    double norm = 0;            // ||f||_{w,q}
    double constant = 0;
    double rhs = 0;
    bool holds = false;
};

// ||phi f||_{w,q} <= C ||phi||_{l1_nu} ||f||_{w,q}, with the window coefficients
// truncated to their numerical bandwidth on `grid`.
LocalizationReport localization_bound_check(const CoeffArray& f, const CutoffWindow& window, const Grid& grid,
                                            const Weight& w, const Weight& nu, double q);

// A factor of a local product: a test distribution or an explicit coefficient array.
struct LocalFactor {
    std::optional<TestDistribution> dist;
    std::optional<CoeffArray> coeffs;
    std::string label;
};

struct ProductReport {
    ConvolutionResult conv;
    CoeffArray f1, f2;
    std::optional<YoungReport> young;
};

// Coefficients of (phi f1)(phi f2) at x0 from the localized factors. Explicit
// coefficient arrays are taken to be already localized with the same window.
// Distribution factors are expanded to `input_radius` (default: `radius`).
ProductReport local_product(const LocalFactor& f1, const LocalFactor& f2, const CutoffWindow& window, int radius,
                            int input_radius = 0);

}  // namespace mlwf
