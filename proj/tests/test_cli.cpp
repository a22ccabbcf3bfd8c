#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mlwf/cli.hpp"
#include "mlwf/coeffs.hpp"
#include "mlwf/field_io.hpp"

using namespace mlwf;
namespace fs = std::filesystem;

namespace {

struct Dir {
    fs::path path = fs::temp_directory_path() / "mlwf_cli_test";
    Dir() { fs::create_directories(path); }
    ~Dir() { fs::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

int cli(const std::string& args) {
    std::string cmd = std::string(MLWF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

Json load(const std::string& path) {
    std::ifstream in(path);
    return Json::parse(in);
}

}  // namespace

TEST_CASE("synth writes delta coefficients") {
    Dir d;
    REQUIRE(cli("synth delta --x0 0.5 --nmax 64 --out " + (d / "delta.csv")) == 0);
    CoeffArray a = read_coeffs(d / "delta.csv");
    REQUIRE(a.radius() == 64);
    for (int n = -64; n <= 64; ++n) CHECK(a.at({n, 0, 0}).real() == doctest::Approx(n % 2 ? -1.0 : 1.0));
}

TEST_CASE("analyze a synthesized Gaussian field") {
    Dir d;
    REQUIRE(cli("synth gaussian --dim 2 --location 0.5,0.5 --width 0.05 --M 256 --out " + (d / "g.json")) == 0);
    SampledField f = read_field(d / "g.json");
    CHECK(f.grid.samples_per_axis() == 256);
    REQUIRE(cli("analyze wf --input " + (d / "g.json") + " --x0 0.5,0.5 --window-in 0.12 --nmax 64 --k-min 3 --out " +
                (d / "r.json")) == 0);
    Json r = load(d / "r.json");
    CHECK(r["result"]["schema"] == "wavefront-report/1");
    CHECK(r["result"]["singular"].empty());
    CHECK(r["config"]["n_max"] == 64);
}

TEST_CASE("square wave Sobolev verdicts around the jump") {
    Dir d;
    // s = 0.6 lies within the 0.1 band around s* = 1/2: never reported regular
    CHECK(cli("analyze sobolev --kind square_wave_1d --x0 0.5 --order 0.6 --out " + (d / "a.json")) == 2);
    for (const auto& dir : load(d / "a.json")["result"]["directions"]) CHECK(dir["verdict"] != "regular");
    CHECK(cli("analyze sobolev --kind square_wave_1d --x0 0.5 --order 0.7 --out " + (d / "b.json")) == 0);
    for (const auto& dir : load(d / "b.json")["result"]["directions"]) CHECK(dir["verdict"] == "singular");
    CHECK(load(d / "b.json")["result"]["singular"].size() == 2);
}

TEST_CASE("exit codes") {
    Dir d;
    // edge, Sobolev order exactly at the critical value: inconclusive
    CHECK(cli("analyze sobolev --kind halfplane_edge_2d --dim 2 --nmax 128 --k-min 3 --order 0.5 --out " +
              (d / "s.json")) == 2);
    CHECK(load(d / "s.json")["result"]["inconclusive"] == true);
    CHECK(cli("analyze wf --kind delta --nmax 4") == 1);           // too few shells
    CHECK(cli("analyze wf --kind sawtooth") == 1);                 // unknown kind
    CHECK(cli("analyze wf --input " + (d / "missing.json")) == 1);  // unreadable input
    CHECK(cli("analyze wf --kind delta --window-in 0.3 --window-out 0.2") == 1);
    CHECK(cli("frobnicate") == 1);
}

TEST_CASE("reports through run()") {
    RunConfig c;
    c.command = "analyze-wf";
    c.kind = "kink_1d";
    std::ostringstream out;
    CHECK(run(c, out) == 0);
    Json j = Json::parse(out.str());
    CHECK(j["result"]["singular"].size() == 2);
    auto dirs = j["result"]["directions"];
    REQUIRE(dirs.size() == 2);
    double t = dirs[0]["cones"][0]["order"].get<double>();
    CHECK(t == doctest::Approx(2.0).epsilon(0.05));

    RunConfig m;
    m.command = "moderate-check";
    m.weight_s = 2;
    m.nu_s = 2;
    std::ostringstream mo;
    CHECK(run(m, mo) == 0);
    CHECK(Json::parse(mo.str())["result"]["constant"].get<double>() <= 2.0);

    RunConfig n;
    n.command = "norm";
    n.kind = "square_wave_1d";
    n.weight_s = 0.7;
    n.membership = true;
    std::ostringstream no;
    run(n, no);
    CHECK(Json::parse(no.str())["result"]["membership"]["verdict"] == "divergent");
}
