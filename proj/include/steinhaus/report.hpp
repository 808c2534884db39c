#pragma once

#include <optional>
#include <string>

#include "steinhaus/product.hpp"

namespace steinhaus {

// Rows: translate_index, covered_x_index, offset_coeffs,
// value_approx_50digits. Coefficients use "n:m" pairs joined by ';'.
std::string decomposition_to_csv(const Decomposition& decomposition);

// Static SVG: one horizontal lane per translate with dots at offset + b_n
// for n <= dots_per_translate. All coordinates derive from exact rationals,
// so output is byte-identical for identical inputs.
std::string decomposition_to_svg(const Decomposition& decomposition,
                                 std::size_t dots_per_translate);

// 2-D product picture: squares at the per-axis enumeration grid points,
// colored by the covering product translate, optionally pushed through the
// linear map.
std::string product_to_svg(const ProductDecomposition& product,
                           std::size_t grid_per_axis,
                           const std::optional<RationalMatrix>& map);

}  // namespace steinhaus
