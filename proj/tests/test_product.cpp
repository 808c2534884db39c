#include <doctest.h>

#include <random>

#include "steinhaus/errors.hpp"
#include "steinhaus/json_io.hpp"
#include "steinhaus/parse.hpp"
#include "steinhaus/product.hpp"

using namespace steinhaus;

namespace {

const Rational kEps = parse_rational("1/20");

Decomposition axis_run(const char* interval_text, unsigned steps) {
  BasisSpec basis = new_basis(kEps);
  const RealInterval J = parse_interval(interval_text, basis);
  return decompose(J, kEps, steps, basis);
}

RationalMatrix matrix2(const char* a, const char* b, const char* c,
                       const char* d) {
  return RationalMatrix::make({{parse_rational(a), parse_rational(b)},
                               {parse_rational(c), parse_rational(d)}});
}

}  // namespace

TEST_CASE("one axis degenerates to the axis decomposition") {
  Decomposition axis = axis_run("[0,1)", 8);
  const std::size_t count = axis.translates.size();
  const ProductDecomposition product = product_decompose({axis}, {count});
  REQUIRE(product.translates.size() == count);
  for (std::size_t i = 0; i < count; ++i) {
    CHECK(product.translates[i].offsets[0] == axis.translates[i].offset);
  }
  CHECK(verify_product(product, 8, 10).pass);
}

TEST_CASE("distinct index tuples give disjoint product translates") {
  Decomposition x = axis_run("[0,1)", 6);
  Decomposition y = axis_run("[0,1)", 6);
  const ProductDecomposition product = product_decompose({x, y}, {2, 2});
  REQUIRE(product.translates.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(product_translates_disjoint(product.translates[i],
                                        product.translates[j]) == (i != j));
    }
  }
}

TEST_CASE("2-D grid coverage verifies and detects corruption") {
  Decomposition x = axis_run("[0,1)", 10);
  Decomposition y = axis_run("[0,1)", 10);
  ProductDecomposition product = product_decompose(
      {x, y}, {x.translates.size(), y.translates.size()});
  CHECK(verify_product(product, 6, 8).pass);

  ProductDecomposition corrupt = product;
  corrupt.translates[3].offsets[1] =
      corrupt.translates[3].offsets[1] + GroupElement::unit(2);
  const VerifyReport report = verify_product(corrupt, 6, 8);
  CHECK(!report.pass);
  CHECK(!report.witness.empty());
}

TEST_CASE("undersized prefixes leave grid points uncovered") {
  Decomposition x = axis_run("[0,1)", 10);
  Decomposition y = axis_run("[0,1)", 10);
  const ProductDecomposition small = product_decompose({x, y}, {3, 3});
  CHECK(!verify_product(small, 10, 5).pass);
}

TEST_CASE("matrix construction checks invertibility and shape") {
  CHECK_THROWS_AS(matrix2("1", "2", "2", "4"), SingularMatrix);
  CHECK_THROWS_AS(RationalMatrix::make({{Rational(1)}, {Rational(2)}}),
                  DimensionMismatch);
  const RationalMatrix shear = matrix2("1", "1", "0", "1");
  CHECK(shear.determinant() == 1);
  const RationalMatrix id = RationalMatrix::identity(3);
  CHECK(id.determinant() == 1);
  CHECK(id.apply({Rational(1), Rational(2), Rational(3)}) ==
        std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
}

TEST_CASE("identity map keeps representations comparable") {
  Decomposition x = axis_run("[0,1)", 4);
  const RationalMatrix id = RationalMatrix::identity(1);
  const PointND p{{x.translates[0].offset}};
  const MappedPointND mapped = apply_linear_map(id, p);
  CHECK(mapped_points_equal(mapped, apply_linear_map(id, p)));
}

TEST_CASE("shear preserves disjointness verdicts through pullback") {
  Decomposition x = axis_run("[0,1)", 6);
  Decomposition y = axis_run("[0,1)", 6);
  const ProductDecomposition product = product_decompose({x, y}, {3, 3});
  const RationalMatrix shear = matrix2("1", "1", "0", "1");
  for (std::size_t i = 0; i < product.translates.size(); ++i) {
    for (std::size_t j = 0; j < product.translates.size(); ++j) {
      const auto a = apply_linear_map(shear, product.translates[i]);
      const auto b = apply_linear_map(shear, product.translates[j]);
      CHECK(mapped_translates_disjoint(a, b) ==
            product_translates_disjoint(product.translates[i],
                                        product.translates[j]));
    }
  }
}

TEST_CASE("random invertible maps reproduce the verification verdict") {
  Decomposition x = axis_run("[0,1)", 8);
  Decomposition y = axis_run("[0,1)", 8);
  const ProductDecomposition good = product_decompose(
      {x, y}, {x.translates.size(), y.translates.size()});
  ProductDecomposition bad = good;
  bad.translates[1].offsets[0] =
      bad.translates[1].offsets[0] + GroupElement::unit(4);

  std::mt19937 rng(99);
  std::uniform_int_distribution<int> entry(-5, 5);
  int generated = 0;
  while (generated < 5) {
    std::vector<std::vector<Rational>> rows{
        {Rational(entry(rng)), Rational(entry(rng))},
        {Rational(entry(rng)), Rational(entry(rng))}};
    try {
      const RationalMatrix map = RationalMatrix::make(rows);
      const auto mapped_good = apply_linear_map(map, good);
      const auto mapped_bad = apply_linear_map(map, bad);
      CHECK(verify_mapped_product(mapped_good, 4, 4).pass ==
            verify_product(good, 4, 4).pass);
      CHECK(verify_mapped_product(mapped_bad, 4, 4).pass ==
            verify_product(bad, 4, 4).pass);
      ++generated;
    } catch (const SingularMatrix&) {
      continue;  // roll again
    }
  }
}

TEST_CASE("mixed dimensions are rejected") {
  Decomposition x = axis_run("[0,1)", 4);
  Decomposition y = axis_run("[0,1)", 4);
  CHECK_THROWS_AS(product_decompose({x, y}, {2}), DimensionMismatch);
  const ProductDecomposition product = product_decompose({x, y}, {2, 2});
  const RationalMatrix id3 = RationalMatrix::identity(3);
  CHECK_THROWS_AS(apply_linear_map(id3, product), DimensionMismatch);
  const TranslateND t2 = product.translates[0];
  TranslateND t3 = t2;
  t3.offsets.push_back(GroupElement{});
  CHECK_THROWS_AS(product_translates_disjoint(t2, t3), DimensionMismatch);
  const RationalMatrix shear = matrix2("1", "1", "0", "1");
  CHECK_THROWS_AS(
      mapped_translates_disjoint(
          apply_linear_map(shear, t2),
          apply_linear_map(RationalMatrix::identity(2), t2)),
      DimensionMismatch);
}

TEST_CASE("product JSON round-trips and re-verifies") {
  Decomposition x = axis_run("[0,1)", 6);
  Decomposition y = axis_run("[0,1)", 6);
  const ProductDecomposition product = product_decompose(
      {x, y}, {x.translates.size(), y.translates.size()});
  const RationalMatrix shear = matrix2("1", "1", "0", "1");
  const std::string text = product_to_json(product, shear);
  std::optional<RationalMatrix> loaded_map;
  const ProductDecomposition loaded = product_from_json(text, &loaded_map);
  REQUIRE(loaded_map.has_value());
  CHECK(*loaded_map == shear);
  CHECK(loaded.translates.size() == product.translates.size());
  CHECK(verify_product(loaded, 4, 4).pass);
}
