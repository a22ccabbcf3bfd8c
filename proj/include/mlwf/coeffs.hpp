#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mlwf/grid.hpp"

namespace mlwf {

// Fourier coefficients a_n on the box |n_j| <= radius, stored row-major with
// the first component slowest.
class CoeffArray {
public:
    enum class Source { sampled, analytic, synthetic };

    CoeffArray() = default;
    CoeffArray(int dim, int radius, Source source = Source::synthetic);

    int dim() const { return dim_; }
    int radius() const { return radius_; }
    int side() const { return 2 * radius_ + 1; }
    std::size_t size() const { return data_.size(); }
    Source source() const { return source_; }

    bool contains(const Index& n) const;
    std::size_t flat(const Index& n) const;
    Index index(std::size_t flat) const;

    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }
    cplx& at(const Index& n) { return data_[flat(n)]; }
    const cplx& at(const Index& n) const { return data_[flat(n)]; }
    // Zero outside the box.
    cplx get(const Index& n) const { return contains(n) ? data_[flat(n)] : cplx{}; }

    std::vector<cplx>& values() { return data_; }
    const std::vector<cplx>& values() const { return data_; }

    // Copy restricted (or zero-extended) to another radius.
    CoeffArray resized(int radius) const;
    double max_abs() const;

    // Quadrature panels used for analytic coefficients, 0 otherwise.
    int refinement = 0;

private:
    int dim_ = 0;
    int radius_ = 0;
    Source source_ = Source::synthetic;
    std::vector<cplx> data_;
};

const char* to_string(CoeffArray::Source s);

// a_n = M^-d sum_k f(x_k) exp(-2 pi i n.x_k) for |n_j| <= radius; needs radius < M/2.
CoeffArray fourier_coefficients(const SampledField& f, int radius);

// Inverse of fourier_coefficients for radius < M/2 (exact for band-limited data).
SampledField synthesize(const CoeffArray& a, const Grid& grid);

// Coefficients of e_m * f, b_n = a_(n-m), on |n_j| <= radius; needs a.radius() >= radius + max|m_j|.
CoeffArray modulated(const CoeffArray& a, const Index& m, int radius);

// Coefficient files: CSV with columns n1[,n2[,n3]],re,im, or binary with one JSON
// header line {"d":..,"N_max":..} followed by interleaved little-endian float64.
void write_coeffs_csv(const CoeffArray& a, const std::string& path);
void write_coeffs_csv(const CoeffArray& a, std::ostream& out);
CoeffArray read_coeffs_csv(const std::string& path);
void write_coeffs_binary(const CoeffArray& a, const std::string& path);
CoeffArray read_coeffs_binary(const std::string& path);
CoeffArray read_coeffs(const std::string& path);

// Closed-form test distributions and their exact (or quadrature) coefficients.
enum class Kind { delta, square_wave_1d, kink_1d, halfplane_edge_2d, line_delta_2d, gaussian, plane_wave };

const char* to_string(Kind k);
Kind kind_from_string(const std::string& s);

struct TestDistribution {
    Kind kind = Kind::delta;
    int dim = 1;
    Point location{};       // singular point, point on the edge/line, or Gaussian centre
    Point normal{1, 0, 0};  // edge or line normal (2-D)
    double width = 0.01;    // Gaussian standard deviation
    Index wave{};           // plane-wave frequency

    bool sampleable() const;
};

// Point values of the distribution on the cell [0,1)^d. Only functions can be sampled.
SampledField sample(const TestDistribution& dist, const Grid& grid);

// Coefficients of the distribution itself as a periodic object (no window).
// Available for delta, square wave, kink, gaussian and plane wave.
CoeffArray exact_coeffs(const TestDistribution& dist, int radius);

struct QuadratureOptions {
    int min_panels = 8;
    int max_panels = 1 << 16;
    double tolerance = 1e-10;  // max abs change between successive doublings
    int fixed_panels = 0;      // if > 0, evaluate at exactly this level without refinement
};

// Coefficients of window * distribution. Point singularities (delta, square wave
// jump, kink) must lie in the window plateau or outside its support; windows whose
// transition band crosses the singular point are rejected. Edge and line kinds are
// treated as distributions on R^2; everything else is 1-periodic.
CoeffArray analytic_coeffs(const TestDistribution& dist, const CutoffWindow& window, int radius,
                           const QuadratureOptions& opts = {});

}  // namespace mlwf
