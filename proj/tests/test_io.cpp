#include <doctest.h>

#include "steinhaus/engine.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/json_io.hpp"
#include "steinhaus/parse.hpp"
#include "steinhaus/report.hpp"

using namespace steinhaus;

namespace {

BasisSpec& shared_basis() {
  static BasisSpec basis = new_basis(parse_rational("1/20"));
  return basis;
}

}  // namespace

TEST_CASE("parse_rational accepts canonical forms and rejects junk") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-3/40") == Rational(-3, 40));
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("3/"), ParseError);
  CHECK_THROWS_AS(parse_rational("/4"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("parse_interval handles brackets, signs, and group endpoints") {
  BasisSpec& basis = shared_basis();
  const RealInterval a = parse_interval("[0,1)", basis);
  CHECK(a.lo_closed);
  CHECK(!a.hi_closed);
  CHECK(a.lo.offset == 0);
  CHECK(a.hi.offset == 1);

  const RealInterval b = parse_interval("(-1/2, 1/2)", basis);
  CHECK(!b.lo_closed);
  CHECK(!b.hi_closed);
  CHECK(b.lo.offset == Rational(-1, 2));

  const RealInterval c = parse_interval("[g:{}, g:{0:-13}]", basis);
  CHECK(c.lo.group_part.is_zero());
  CHECK(c.hi.group_part == GroupElement::single(0, -13));

  const RealInterval d = parse_interval("[g:{0:-2,1:3}, 2]", basis);
  CHECK(d.lo.group_part.coeff(1) == 3);

  // Endpoints above index 1 commit the basis as far as they need.
  const RealInterval e = parse_interval("[g:{0:-10,4:1}, 2]", basis);
  CHECK(basis.committed() >= 5);
  CHECK(e.lo.group_part.coeff(4) == 1);
}

TEST_CASE("parse_interval reports the offending position") {
  BasisSpec& basis = shared_basis();
  try {
    parse_interval("[0,1", basis);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_interval("0,1)", basis), ParseError);
  CHECK_THROWS_AS(parse_interval("[x,1)", basis), ParseError);
  CHECK_THROWS_AS(parse_interval("[0,1) extra", basis), ParseError);
  CHECK_THROWS_AS(parse_interval("[1,0)", basis), ParseError);
  CHECK_THROWS_AS(parse_interval("[g:{0:1/2},1)", basis), ParseError);
}

TEST_CASE("decomposition JSON round-trips byte for byte") {
  BasisSpec basis = new_basis(parse_rational("1/20"));
  const RealInterval J = parse_interval("[0,1)", basis);
  const Decomposition d = decompose(J, parse_rational("1/20"), 10, basis);
  const std::string text = decomposition_to_json(d);
  const Decomposition loaded = decomposition_from_json(text);
  CHECK(decomposition_to_json(loaded) == text);
  CHECK(verify_decomposition(loaded, 10, 15).pass);
}

TEST_CASE("any single-field mutation of a translate offset fails verify") {
  BasisSpec basis = new_basis(parse_rational("1/20"));
  const RealInterval J = parse_interval("[0,1)", basis);
  const Decomposition d = decompose(J, parse_rational("1/20"), 8, basis);
  const std::string text = decomposition_to_json(d);
  REQUIRE(verify_decomposition(d, 8, 10).pass);

  // Bump every stored coefficient of every translate, one at a time.
  for (std::size_t i = 0; i < d.translates.size(); ++i) {
    for (const auto& [index, coeff] : d.translates[i].offset.coeffs()) {
      Decomposition tampered = decomposition_from_json(text);
      tampered.translates[i].offset.set_coeff(index, coeff + 1);
      CHECK(!verify_decomposition(tampered, 8, 10).pass);
    }
  }
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS(decomposition_from_json("{"), ParseError);
  CHECK_THROWS_AS(decomposition_from_json("{\"interval\": 3}"), ParseError);
  CHECK_THROWS_AS(basis_from_json("{\"epsilon\": \"1/20\"}"), ParseError);
  CHECK_THROWS_AS(parallelepiped_from_json("{\"dimension\": 2}"), ParseError);
}

TEST_CASE("parallelepiped specs parse both axis forms") {
  const std::string text = R"json({
    "dimension": 2,
    "axes": ["[0,1)", {"interval": "[0,2)", "epsilon": "1/10"}],
    "matrix": [["1", "1"], ["0", "1"]]
  })json";
  const ParallelepipedSpec spec = parallelepiped_from_json(text);
  CHECK(spec.dimension == 2);
  CHECK(spec.axes[0].interval_text == "[0,1)");
  CHECK(!spec.axes[0].epsilon.has_value());
  REQUIRE(spec.axes[1].epsilon.has_value());
  CHECK(*spec.axes[1].epsilon == Rational(1, 10));
  REQUIRE(spec.matrix.has_value());
  CHECK(spec.matrix->determinant() == 1);
}

TEST_CASE("CSV output is deterministic with the documented columns") {
  BasisSpec basis = new_basis(parse_rational("1/20"));
  const RealInterval J = parse_interval("[0,1)", basis);
  const Decomposition d = decompose(J, parse_rational("1/20"), 5, basis);
  const std::string csv = decomposition_to_csv(d);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "translate_index,covered_x_index,offset_coeffs,"
        "value_approx_50digits");
  // First translate is -e_0 with value -q_0 = 3/40 = 0.075.
  CHECK(csv.find("0,0,0:-1,0.075000") != std::string::npos);
  CHECK(csv == decomposition_to_csv(d));
}

TEST_CASE("SVG output is deterministic byte for byte") {
  BasisSpec basis = new_basis(parse_rational("1/20"));
  const RealInterval J = parse_interval("[0,1)", basis);
  const Decomposition d = decompose(J, parse_rational("1/20"), 6, basis);
  const std::string svg = decomposition_to_svg(d, 12);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg == decomposition_to_svg(d, 12));
  CHECK(svg.find("<circle") != std::string::npos);

  Decomposition x = decompose(J, parse_rational("1/20"), 6, basis);
  ProductDecomposition product = product_decompose(
      {x, x}, {x.translates.size(), x.translates.size()});
  const std::string plane = product_to_svg(product, 5, std::nullopt);
  CHECK(plane == product_to_svg(product, 5, std::nullopt));
  CHECK(plane.find("<rect") != std::string::npos);
}
