#include "mlwf/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mlwf {

static_assert(std::endian::native == std::endian::little, "binary field payloads assume a little-endian host");

namespace fs = std::filesystem;

namespace {

std::vector<cplx> read_payload(const fs::path& p, std::size_t count) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open field payload " + p.string());
    std::vector<cplx> v(count);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(count * sizeof(cplx)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(cplx))
        throw std::runtime_error("field payload " + p.string() + " is shorter than the grid");
    char extra;
    if (in.read(&extra, 1)) throw std::runtime_error("field payload " + p.string() + " is longer than the grid");
    return v;
}

}  // namespace

SampledField read_field(const std::string& manifest_path) {
    fs::path mp(manifest_path);
    if (mp.extension() == ".csv") return read_field_csv(manifest_path);
    std::ifstream in(mp);
    if (!in) throw std::runtime_error("cannot open field manifest " + manifest_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed field manifest " + manifest_path + ": " + e.what());
    }
    if (!j.contains("d") || !j.contains("M") || !j.contains("data"))
        throw std::runtime_error("field manifest needs keys d, M and data");
    Grid g(j.at("d").get<int>(), j.at("M").get<int>());
    fs::path data = j.at("data").get<std::string>();
    if (data.is_relative()) data = mp.parent_path() / data;
    if (data.extension() == ".csv") {
        SampledField f = read_field_csv(data.string());
        if (f.values.size() != g.size())
            throw std::runtime_error("CSV payload does not match the manifest grid");
        return SampledField(g, std::move(f.values), j.value("meta", std::string{}));
    }
    std::string meta = j.value("meta", std::string{});
    return SampledField(g, read_payload(data, g.size()), meta);
}

void write_field(const SampledField& f, const std::string& manifest_path) {
    fs::path mp(manifest_path);
    fs::path data = mp;
    data.replace_extension(".bin");
    nlohmann::ordered_json j;
    j["d"] = f.grid.dim();
    j["M"] = f.grid.samples_per_axis();
    j["data"] = data.filename().string();
    if (!f.meta.empty()) j["meta"] = f.meta;
    std::ofstream out(mp);
    if (!out) throw std::runtime_error("cannot write field manifest " + manifest_path);
    out << j.dump(2) << "\n";
    std::ofstream bin(data, std::ios::binary);
    if (!bin) throw std::runtime_error("cannot write field payload " + data.string());
    bin.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
}

SampledField read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field CSV " + path);
    std::vector<cplx> v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.find_first_of("0123456789") != 0 && line[0] != '-' && line[0] != '.' &&
            line[0] != '+')
            continue;  // header
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double re = 0, im = 0;
        if (!(ss >> re)) throw std::runtime_error("bad CSV row " + std::to_string(lineno) + " in " + path);
        if (!(ss >> im)) im = 0.0;
        v.emplace_back(re, im);
    }
    if (v.size() < 2) throw std::runtime_error("CSV field " + path + " has fewer than 2 samples");
    Grid g(1, static_cast<int>(v.size()));
    return SampledField(g, std::move(v));
}

void write_field_csv(const SampledField& f, const std::string& path) {
    if (f.grid.dim() != 1) throw std::invalid_argument("CSV fields are one-dimensional only");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "re,im\n";
    char buf[64];
    for (const cplx& z : f.values) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
        out << buf;
    }
}

}  // namespace mlwf
