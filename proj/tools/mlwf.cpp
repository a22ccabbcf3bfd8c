#include <exception>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "mlwf/cli.hpp"

namespace {

void input_options(CLI::App* app, mlwf::RunConfig& c) {
    app->add_option("--input", c.input, "field manifest (.json) or 1-D CSV field");
    app->add_option("--kind", c.kind, "test distribution: delta, square_wave_1d, kink_1d, halfplane_edge_2d, "
                                      "line_delta_2d, gaussian, plane_wave");
    app->add_option("--dim", c.dim, "dimension of the test distribution")->check(CLI::Range(1, 3));
    app->add_option("--location", c.location, "singular point / edge point / Gaussian centre")->delimiter(',');
    app->add_option("--normal", c.normal, "edge or line normal (2-D)")->delimiter(',');
    app->add_option("--width", c.width, "Gaussian standard deviation");
    app->add_option("--wave", c.wave, "plane-wave frequency")->delimiter(',');
}

void window_options(CLI::App* app, mlwf::RunConfig& c) {
    app->add_option("--x0", c.x0, "base point")->delimiter(',');
    app->add_option("--window-in", c.inner, "window plateau radius");
    app->add_option("--window-out", c.outer, "window support radius");
    app->add_option("--nmax", c.n_max, "coefficient box radius");
}

void scan_options(CLI::App* app, mlwf::RunConfig& c) {
    app->add_option("--half-angle", c.scan.half_angle_deg, "cone half-angle in degrees (default 10 in 2-D, 15 in 3-D)");
    app->add_option("--directions", c.scan.directions, "number of directions in 2-D");
    app->add_option("--axis", c.axis, "scan this single direction instead of the grid")->delimiter(',');
    app->add_option("--k-min", c.scan.fit.k_min, "first dyadic shell");
    app->add_option("--k-max", c.scan.fit.k_max, "last dyadic shell (-1: largest that fits)");
    app->add_option("--nested", c.scan.nested, "nested cone half-angle fraction (0 disables)");
    app->add_option("--floor", c.scan.fit.floor_rel, "noise floor relative to the largest coefficient");
    app->add_option("--max-residual", c.scan.max_residual, "fits with larger RMS residual are inconclusive");
    app->add_option("--out", c.out, "report path (default stdout)");
    app->add_option("--csv", c.csv, "per-direction CSV");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wave-front and Sobolev wave-front sets from Fourier coefficients"};
    app.require_subcommand(1);
    mlwf::RunConfig c;
    app.add_option("--seed", c.seed, "seed recorded in reports");

    auto* analyze = app.add_subcommand("analyze", "scan directions at a base point");
    analyze->require_subcommand(1);
    auto* wf = analyze->add_subcommand("wf", "wave-front scan");
    input_options(wf, c);
    window_options(wf, c);
    scan_options(wf, c);
    wf->add_option("--threshold", c.scan.threshold, "decay order below which a direction is singular");
    wf->add_option("--map", c.map_points, "scan every point of an m^d grid instead of --x0");
    auto* sob = analyze->add_subcommand("sobolev", "Sobolev wave-front scan");
    input_options(sob, c);
    window_options(sob, c);
    scan_options(sob, c);
    sob->add_option("--order", c.scan.order, "Sobolev order s")->required();
    sob->add_option("--band", c.scan.band, "half-width of the inconclusive band around s*");

    auto* prod = app.add_subcommand("product", "local product of two factors at x0");
    input_options(prod, c);
    window_options(prod, c);
    prod->add_option("--f1", c.factor1, "first factor: kind name or coefficient file")->required();
    prod->add_option("--f2", c.factor2, "second factor: kind name or coefficient file")->required();
    prod->add_option("--young", c.young, "check the weighted Young bound with exponents q1,q2")->delimiter(',');
    prod->add_option("--s", c.weight_s, "exponent of the weight <n>^s");
    prod->add_option("--nu-s", c.nu_s, "exponent of the weight nu = <n>^s");
    prod->add_option("--out", c.out, "report path");
    prod->add_option("--csv", c.csv, "product coefficients as CSV");

    auto* nrm = app.add_subcommand("norm", "weighted l^q norm and membership estimate");
    input_options(nrm, c);
    window_options(nrm, c);
    nrm->add_option("--s", c.weight_s, "exponent of the weight <n>^s");
    nrm->add_option("--q", c.q, "exponent q (inf allowed)");
    nrm->add_flag("--membership", c.membership, "estimate membership from truncations 64..512");
    nrm->add_flag("--windowed", c.windowed, "localize the test distribution with the window at x0");
    nrm->add_option("--out", c.out, "report path");

    auto* mod = app.add_subcommand("moderate-check", "estimate the moderateness constant");
    mod->add_option("--s", c.weight_s, "exponent of the weight <n>^s");
    mod->add_option("--exp", c.exp_rate, "use the weight exp(rate |n|) instead");
    mod->add_option("--nu-s", c.nu_s, "exponent of nu = <n>^s");
    mod->add_option("--radius", c.radius, "search box radius");
    mod->add_option("--dim", c.dim, "dimension")->check(CLI::Range(1, 3));
    mod->add_option("--out", c.out, "report path");

    auto* syn = app.add_subcommand("synth", "write a test field (*.json) or its coefficients (*.csv, *.bin, stdout)");
    syn->add_option("KIND", c.kind, "distribution kind (or --kind)");
    input_options(syn, c);
    window_options(syn, c);
    syn->add_option("--M", c.grid_m, "samples per axis");
    syn->add_flag("--windowed", c.windowed, "multiply by the window at x0");
    syn->add_option("--out", c.out, "output file; .json writes a sampled field manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (wf->parsed()) c.command = "analyze-wf";
    else if (sob->parsed()) c.command = "analyze-sobolev";
    else if (prod->parsed()) c.command = "product";
    else if (nrm->parsed()) c.command = "norm";
    else if (mod->parsed()) c.command = "moderate-check";
    else if (syn->parsed()) c.command = "synth";

    try {
        return mlwf::run(c, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
