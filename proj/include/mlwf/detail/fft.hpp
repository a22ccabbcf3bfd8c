#pragma once

#include <vector>

#include "mlwf/grid.hpp"

namespace mlwf::detail {

// In-place unnormalised DFT over a dim-dimensional cube with `n` points per axis,
// row-major. sign = -1 is the forward transform exp(-2 pi i k.x / n).
void fft_cube(std::vector<cplx>& data, int dim, int n, int sign);

}  // namespace mlwf::detail
