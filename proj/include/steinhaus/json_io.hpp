#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steinhaus/product.hpp"

namespace steinhaus {

// Serialized forms use stable field order and exact rational strings, so a
// run serializes byte-identically across builds. All from_json functions
// throw ParseError on malformed documents.

std::string basis_to_json(const BasisSpec& basis);
BasisSpec basis_from_json(const std::string& text);

std::string group_element_to_json(const GroupElement& element);

std::string decomposition_to_json(const Decomposition& decomposition);
Decomposition decomposition_from_json(const std::string& text);

std::string product_to_json(const ProductDecomposition& product,
                            const std::optional<RationalMatrix>& map);
ProductDecomposition product_from_json(const std::string& text,
                                       std::optional<RationalMatrix>* map);

// Input description of a parallelepiped run. Axes may be interval literals
// or objects {"interval": ..., "epsilon": ...} overriding the global
// epsilon; the matrix is optional and defaults to the identity.
struct AxisSpec {
  std::string interval_text;
  std::optional<Rational> epsilon;
};

struct ParallelepipedSpec {
  std::size_t dimension = 0;
  std::vector<AxisSpec> axes;
  std::optional<RationalMatrix> matrix;
};

ParallelepipedSpec parallelepiped_from_json(const std::string& text);

}  // namespace steinhaus
