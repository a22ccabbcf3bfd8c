#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mlwf/report.hpp"

namespace mlwf {

// Everything a command needs; serialized into every report so a run can be repeated.
struct RunConfig {
    std::string command;  // analyze-wf, analyze-sobolev, product, norm, moderate-check, synth

    // input: a field manifest / coefficient file, or a test distribution
    std::string input;
    std::string kind;
    int dim = 1;
    std::vector<double> location;
    std::vector<double> normal{1.0, 0.0};
    double width = 0.012;
    std::vector<int> wave;

    // localization and scan
    std::vector<double> x0;
    double inner = 0.02;
    double outer = 0.25;
    int n_max = 256;
    ScanParams scan;
    std::vector<double> axis;  // single scan direction instead of the grid
    int map_points = 0;  // > 0: full map on a map_points^d grid

    // product
    std::string factor1, factor2;  // kind names or coefficient file paths
    std::vector<double> young;     // q1, q2; empty: no bound check
    double weight_s = 0.0;
    double nu_s = 0.0;

    // norm and moderate-check
    double q = 2.0;
    bool membership = false;
    double exp_rate = 0.0;  // > 0: exponential weight e^(rate |n|) instead of <n>^s
    int radius = 50;

    // synth: --out *.json writes a sampled field, *.csv / *.bin coefficients, none: CSV on stdout
    int grid_m = 1024;
    bool windowed = false;

    std::string out;  // report path (synth: output file); empty: stdout
    unsigned seed = 0; // recorded for reproducibility of sampled diagnostics
    std::string csv;
};

Json to_json(const RunConfig& c);

// Executes one command, writing the report to c.out (or `out`).
// Returns 0 on success, 2 when some verdict is inconclusive. Throws on errors.
int run(const RunConfig& c, std::ostream& out);

}  // namespace mlwf
