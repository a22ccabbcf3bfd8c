#pragma once

#include <string>

#include "mlwf/grid.hpp"

namespace mlwf {

// A field on disk is a small JSON manifest {"d":..,"M":..,"data":"file"} next to
// a payload of little-endian interleaved (re, im) float64 samples in grid order.
// One-dimensional fields may instead be stored as CSV with columns re,im.
SampledField read_field(const std::string& manifest_path);
void write_field(const SampledField& f, const std::string& manifest_path);

SampledField read_field_csv(const std::string& path);
void write_field_csv(const SampledField& f, const std::string& path);

}  // namespace mlwf
