#include "steinhaus/product.hpp"

#include <utility>

#include "steinhaus/errors.hpp"

namespace steinhaus {

RationalMatrix RationalMatrix::identity(std::size_t dimension) {
  std::vector<std::vector<Rational>> rows(dimension,
                                          std::vector<Rational>(dimension, 0));
  for (std::size_t i = 0; i < dimension; ++i) rows[i][i] = 1;
  return make(std::move(rows));
}

RationalMatrix RationalMatrix::make(std::vector<std::vector<Rational>> rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw DimensionMismatch("matrix must have positive dimension");
  RationalMatrix out;
  out.dimension_ = n;
  out.entries_.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw DimensionMismatch("matrix rows must all have length n");
    }
    for (const Rational& v : row) out.entries_.push_back(v);
  }

  // Exact Gaussian elimination for the determinant.
  std::vector<Rational> work = out.entries_;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot * n + col] == 0) ++pivot;
    if (pivot == n) throw SingularMatrix("matrix has zero determinant");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work[pivot * n + j], work[col * n + j]);
      }
      det = -det;
    }
    const Rational lead = work[col * n + col];
    det *= lead;
    for (std::size_t row = col + 1; row < n; ++row) {
      const Rational factor = work[row * n + col] / lead;
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j) {
        work[row * n + j] -= factor * work[col * n + j];
      }
    }
  }
  out.determinant_ = det;
  return out;
}

const Rational& RationalMatrix::at(std::size_t row, std::size_t col) const {
  return entries_[row * dimension_ + col];
}

std::vector<Rational> RationalMatrix::apply(
    const std::vector<Rational>& vec) const {
  if (vec.size() != dimension_) {
    throw DimensionMismatch("vector length does not match the matrix");
  }
  std::vector<Rational> out(dimension_, 0);
  for (std::size_t i = 0; i < dimension_; ++i) {
    for (std::size_t j = 0; j < dimension_; ++j) {
      out[i] += at(i, j) * vec[j];
    }
  }
  return out;
}

bool product_translate_contains(const TranslateND& t, const PointND& x) {
  if (t.offsets.size() != x.coords.size()) {
    throw DimensionMismatch("point and translate dimensions differ");
  }
  for (std::size_t i = 0; i < t.offsets.size(); ++i) {
    if (!translate_contains(Translate{t.offsets[i]}, x.coords[i])) {
      return false;
    }
  }
  return true;
}

bool product_translates_disjoint(const TranslateND& a, const TranslateND& b) {
  if (a.offsets.size() != b.offsets.size()) {
    throw DimensionMismatch("translate dimensions differ");
  }
  for (std::size_t i = 0; i < a.offsets.size(); ++i) {
    if (translates_disjoint(Translate{a.offsets[i]}, Translate{b.offsets[i]})) {
      return true;
    }
  }
  return false;
}

ProductDecomposition product_decompose(std::vector<Decomposition> axes,
                                       std::vector<std::size_t> prefix) {
  if (axes.empty()) throw DimensionMismatch("at least one axis is required");
  if (prefix.size() != axes.size()) {
    throw DimensionMismatch("one prefix size per axis is required");
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (prefix[i] == 0 || prefix[i] > axes[i].translates.size()) {
      throw DimensionMismatch("prefix size out of range for axis " +
                              std::to_string(i));
    }
    // Distinct tuples are disjoint because the axis prefixes are pairwise
    // disjoint; assert that through the symbolic test.
    for (std::size_t a = 0; a < prefix[i]; ++a) {
      for (std::size_t b = a + 1; b < prefix[i]; ++b) {
        if (!translates_disjoint(axes[i].translates[a],
                                 axes[i].translates[b])) {
          throw InvariantViolation("axis " + std::to_string(i) +
                                   " translates are not pairwise disjoint");
        }
      }
    }
  }

  ProductDecomposition out{std::move(axes), std::move(prefix), {}};
  std::size_t total = 1;
  for (const std::size_t k : out.prefix) total *= k;
  out.translates.reserve(total);
  std::vector<std::size_t> index(out.prefix.size(), 0);
  for (std::size_t count = 0; count < total; ++count) {
    TranslateND t;
    t.offsets.reserve(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
      t.offsets.push_back(out.axes[i].translates[index[i]].offset);
    }
    out.translates.push_back(std::move(t));
    for (std::size_t i = index.size(); i-- > 0;) {
      if (++index[i] < out.prefix[i]) break;
      index[i] = 0;
    }
  }
  return out;
}

namespace {

struct TupleLess {
  bool operator()(const std::vector<GroupElement>& a,
                  const std::vector<GroupElement>& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
  }
};

}  // namespace

VerifyReport verify_product(const ProductDecomposition& product,
                            std::size_t n_points_per_axis,
                            std::size_t n_basis) {
  VerifyReport report;
  const std::size_t dim = product.axes.size();

  // Per-axis enumeration prefixes.
  std::vector<BasisSpec> bases;
  std::vector<std::vector<GroupElement>> points(dim);
  bases.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    bases.push_back(product.axes[i].basis);
    CEnumeration enumeration(product.axes[i].interval, bases.back());
    for (std::size_t p = 0; p < n_points_per_axis; ++p) {
      points[i].push_back(enumeration.at(p));
    }
  }

  // Coverage: each grid point lies in exactly one product translate.
  std::vector<std::size_t> grid_index(dim, 0);
  const std::size_t grid_total = [&] {
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= points[i].size();
    return total;
  }();
  for (std::size_t count = 0; count < grid_total; ++count) {
    PointND x;
    x.coords.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      x.coords.push_back(points[i][grid_index[i]]);
    }
    std::size_t cover = 0;
    for (const TranslateND& t : product.translates) {
      if (product_translate_contains(t, x)) ++cover;
    }
    if (cover != 1) {
      report.pass = false;
      report.witness = "grid point (";
      for (std::size_t i = 0; i < dim; ++i) {
        report.witness += (i ? "," : "") + std::to_string(grid_index[i]);
      }
      report.witness += ") covered " + std::to_string(cover) + " times";
      return report;
    }
    for (std::size_t i = dim; i-- > 0;) {
      if (++grid_index[i] < points[i].size()) break;
      grid_index[i] = 0;
    }
  }

  // Uniqueness oracle over the product: sums a_tuple + b_tuple distinct.
  std::map<std::vector<GroupElement>, std::size_t, TupleLess> sums;
  std::vector<std::size_t> basis_index(dim, 0);
  for (std::size_t t = 0; t < product.translates.size(); ++t) {
    std::fill(basis_index.begin(), basis_index.end(), 0);
    const std::size_t combos = [&] {
      std::size_t total = 1;
      for (std::size_t i = 0; i < dim; ++i) total *= (n_basis + 1);
      return total;
    }();
    for (std::size_t count = 0; count < combos; ++count) {
      std::vector<GroupElement> sum;
      sum.reserve(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        sum.push_back(product.translates[t].offsets[i] +
                      GroupElement::unit(static_cast<unsigned>(basis_index[i])));
      }
      const auto [it, inserted] = sums.emplace(std::move(sum), t);
      if (!inserted) {
        report.pass = false;
        report.witness = "product sum collision between translates " +
                         std::to_string(it->second) + " and " +
                         std::to_string(t);
        return report;
      }
      for (std::size_t i = dim; i-- > 0;) {
        if (++basis_index[i] <= n_basis) break;
        basis_index[i] = 0;
      }
    }
  }
  return report;
}

MappedPointND apply_linear_map(const RationalMatrix& map, PointND point) {
  if (map.dimension() != point.coords.size()) {
    throw DimensionMismatch("map and point dimensions differ");
  }
  return MappedPointND{map, std::move(point)};
}

MappedTranslateND apply_linear_map(const RationalMatrix& map,
                                   TranslateND translate) {
  if (map.dimension() != translate.offsets.size()) {
    throw DimensionMismatch("map and translate dimensions differ");
  }
  return MappedTranslateND{map, std::move(translate)};
}

MappedProduct apply_linear_map(const RationalMatrix& map,
                               ProductDecomposition product) {
  if (map.dimension() != product.axes.size()) {
    throw DimensionMismatch("map and product dimensions differ");
  }
  return MappedProduct{map, std::move(product)};
}

namespace {

void require_same_map(const RationalMatrix& a, const RationalMatrix& b) {
  if (!(a == b)) {
    throw DimensionMismatch("objects were mapped by different matrices");
  }
}

}  // namespace

bool mapped_points_equal(const MappedPointND& a, const MappedPointND& b) {
  require_same_map(a.map, b.map);
  return a.preimage == b.preimage;
}

bool mapped_translate_contains(const MappedTranslateND& t,
                               const MappedPointND& x) {
  require_same_map(t.map, x.map);
  return product_translate_contains(t.preimage, x.preimage);
}

bool mapped_translates_disjoint(const MappedTranslateND& a,
                                const MappedTranslateND& b) {
  require_same_map(a.map, b.map);
  return product_translates_disjoint(a.preimage, b.preimage);
}

VerifyReport verify_mapped_product(const MappedProduct& product,
                                   std::size_t n_points_per_axis,
                                   std::size_t n_basis) {
  return verify_product(product.preimage, n_points_per_axis, n_basis);
}

}  // namespace steinhaus
