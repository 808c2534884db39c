#pragma once

#include <cstddef>
#include <vector>

#include "steinhaus/engine.hpp"

namespace steinhaus {

// Point of the product space: one group element per axis, each over its own
// per-axis basis.
struct PointND {
  std::vector<GroupElement> coords;

  friend bool operator==(const PointND&, const PointND&) = default;
};

// Product translate offsets + (B_1 x ... x B_n).
struct TranslateND {
  std::vector<GroupElement> offsets;

  friend bool operator==(const TranslateND&, const TranslateND&) = default;
};

// Invertible square matrix with exact rational entries. Construction checks
// the determinant; a singular matrix throws SingularMatrix.
class RationalMatrix {
 public:
  static RationalMatrix identity(std::size_t dimension);
  static RationalMatrix make(std::vector<std::vector<Rational>> rows);

  std::size_t dimension() const { return dimension_; }
  const Rational& at(std::size_t row, std::size_t col) const;
  const Rational& determinant() const { return determinant_; }

  std::vector<Rational> apply(const std::vector<Rational>& vec) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) =
      default;

 private:
  RationalMatrix() = default;
  std::size_t dimension_ = 0;
  std::vector<Rational> entries_;  // row-major
  Rational determinant_;
};

// Product of per-axis decompositions restricted to per-axis prefixes.
// Translate tuples are materialized in row-major order (last axis fastest).
struct ProductDecomposition {
  std::vector<Decomposition> axes;
  std::vector<std::size_t> prefix;
  std::vector<TranslateND> translates;
};

// Coordinate-wise membership: x in t + (B_1 x ... x B_n).
bool product_translate_contains(const TranslateND& t, const PointND& x);

// Product sets are disjoint exactly when some axis pair is disjoint.
bool product_translates_disjoint(const TranslateND& a, const TranslateND& b);

// Builds all prod(prefix) product translates and asserts the per-axis prefix
// translates are pairwise disjoint, which makes distinct tuples disjoint.
ProductDecomposition product_decompose(std::vector<Decomposition> axes,
                                       std::vector<std::size_t> prefix);

// Exact product-space verification: every point of the per-axis enumeration
// prefix grid is covered by exactly one product translate, and the sums
// a_tuple + b_tuple over per-axis basis indices <= n_basis are all distinct.
VerifyReport verify_product(const ProductDecomposition& product,
                            std::size_t n_points_per_axis,
                            std::size_t n_basis);

// Images under an invertible rational map are stored as (map, preimage);
// queries pull back through the preimage, which the injectivity of the map
// makes exact. Mixing objects mapped by different matrices is an error.
struct MappedPointND {
  RationalMatrix map;
  PointND preimage;
};

struct MappedTranslateND {
  RationalMatrix map;
  TranslateND preimage;
};

struct MappedProduct {
  RationalMatrix map;
  ProductDecomposition preimage;
};

MappedPointND apply_linear_map(const RationalMatrix& map, PointND point);
MappedTranslateND apply_linear_map(const RationalMatrix& map,
                                   TranslateND translate);
MappedProduct apply_linear_map(const RationalMatrix& map,
                               ProductDecomposition product);

bool mapped_points_equal(const MappedPointND& a, const MappedPointND& b);
bool mapped_translate_contains(const MappedTranslateND& t,
                               const MappedPointND& x);
bool mapped_translates_disjoint(const MappedTranslateND& a,
                                const MappedTranslateND& b);
VerifyReport verify_mapped_product(const MappedProduct& product,
                                   std::size_t n_points_per_axis,
                                   std::size_t n_basis);

}  // namespace steinhaus
