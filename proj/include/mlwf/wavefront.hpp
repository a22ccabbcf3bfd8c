#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mlwf/coeffs.hpp"
#include "mlwf/cones.hpp"

namespace mlwf {

enum class Verdict { regular, singular, inconclusive };
const char* to_string(Verdict v);

struct ShellStat {
    int k = 0;           // shell 2^k <= |n| < 2^(k+1)
    int count = 0;       // lattice points of the cone in the shell
    double value = 0.0;  // max |a_n| (decay) or sum |a_n|^2 (Sobolev)
};

struct FitOptions {
    int k_min = 3;
    int k_max = -1;           // -1: largest shell inside the coefficient box
    double floor_rel = 1e-13; // noise floor relative to max |a_n| over the whole array
};

struct DecayEstimate {
    std::vector<ShellStat> shells;  // nonempty shells only
    int skipped = 0;                // shells without cone lattice points
    bool rapid = false;        // a shell envelope reached the noise floor: t = +inf
    double order = 0.0;        // t in |a_n| <= C <n>^-t
    double log_constant = 0.0; // ln C
    double residual = 0.0;     // RMS residual of the fit, log2 units
};

struct SobolevEstimate {
    std::vector<ShellStat> shells;
    int skipped = 0;
    bool rapid = false;
    double rate = 0.0;      // beta in sigma_k ~ 2^(beta k)
    double critical = 0.0;  // s* = -beta / 2
    double residual = 0.0;  // log2 units
};

// Fitted decay order of a_n over the cone's dyadic shells.
DecayEstimate directional_decay(const CoeffArray& a, const Cone& cone, const FitOptions& opts = {});

// Critical Sobolev order of the cone's shell energies.
SobolevEstimate sobolev_order(const CoeffArray& a, const Cone& cone, const FitOptions& opts = {});

struct ScanParams {
    double half_angle_deg = -1;  // -1: 10 degrees in 2-D, 15 in 3-D (ignored in 1-D)
    int directions = 72;         // 2-D only
    double threshold = 2.5;      // decay order below which a direction is singular
    double order = 0.0;          // Sobolev order s
    double band = 0.1;           // |s - s*| <= band is inconclusive
    double max_residual = 0.5;   // fits worse than this are inconclusive
    double nested = 0.5;         // second cone with this fraction of the half-angle; <= 0 disables
    FitOptions fit{4, -1, 1e-13};
    std::vector<Point> axes;     // explicit directions instead of the default grid
};

double default_half_angle_deg(int dim);

struct ConeResult {
    double half_angle_deg = 0.0;
    std::optional<DecayEstimate> decay;
    std::optional<SobolevEstimate> sobolev;
    Verdict verdict = Verdict::inconclusive;
    std::string error;
};

struct DirectionResult {
    Point direction{};
    std::vector<ConeResult> cones;  // outer cone first
    Verdict verdict = Verdict::inconclusive;
    std::string error;
};

enum class ScanKind { wavefront, sobolev };

struct ScanResult {
    ScanKind kind = ScanKind::wavefront;
    int dim = 1;
    Point x0{};
    CutoffWindow window;
    ScanParams params;
    int n_max = 0;
    int k_max = 0;
    std::string source;     // "sampled" or "analytic"
    int refinement = 0;     // quadrature panels for analytic input
    std::vector<DirectionResult> directions;
    std::string error;

    std::vector<Point> singular() const;
    bool any_inconclusive() const;
};

// Input to a scan: sampled values, a test distribution, or ready coefficients of phi * f.
using ScanInput = std::variant<SampledField, TestDistribution, CoeffArray>;

// Localized coefficients phi_x0 * f up to n_max.
CoeffArray localized_coefficients(const ScanInput& in, const CutoffWindow& window, int n_max);

// A direction is regular when some cone around it (outer or nested) certifies
// regularity, singular when every cone reports singular, inconclusive otherwise.
ScanResult wavefront_scan(const ScanInput& in, const CutoffWindow& window, int n_max, const ScanParams& p = {});
ScanResult sobolev_scan(const ScanInput& in, const CutoffWindow& window, int n_max, const ScanParams& p = {});

// Same scans from precomputed coefficients.
ScanResult wavefront_scan_coeffs(const CoeffArray& a, const CutoffWindow& window, const ScanParams& p = {});
ScanResult sobolev_scan_coeffs(const CoeffArray& a, const CutoffWindow& window, const ScanParams& p = {});

struct MapEntry {
    Point x{};
    ScanResult scan;
};

// Scans at the base points ((i + 1/2) / m)_i on an m^d grid; failures are recorded per point.
std::vector<MapEntry> full_wf_map(const ScanInput& in, int points_per_axis, double inner, double outer, int n_max,
                                  const ScanParams& p = {});

}  // namespace mlwf
