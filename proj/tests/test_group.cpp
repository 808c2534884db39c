#include <doctest.h>

#include <random>

#include "steinhaus/errors.hpp"
#include "steinhaus/group.hpp"
#include "steinhaus/parse.hpp"

using namespace steinhaus;

namespace {

BasisSpec& shared_basis() {
  static BasisSpec basis = [] {
    BasisSpec b = new_basis(parse_rational("1/20"));
    extend_basis(b, 45);
    return b;
  }();
  return basis;
}

RealInterval rational_interval(const char* lo, const char* hi, bool lo_closed,
                               bool hi_closed, const BasisSpec& basis) {
  return make_interval(point_from(parse_rational(lo)),
                       point_from(parse_rational(hi)), lo_closed, hi_closed,
                       basis);
}

}  // namespace

TEST_CASE("group algebra identities") {
  const GroupElement zero;
  const GroupElement g = GroupElement::single(2, 3) - GroupElement::unit(9);
  CHECK(g + zero == g);
  CHECK(g - g == zero);
  CHECK(GroupElement::unit(3) +
            (GroupElement::unit(5) - GroupElement::unit(3)) ==
        GroupElement::unit(5));
  CHECK(-(-g) == g);
  CHECK(g.mass() == 4);
  CHECK(g.max_index() == 9);
}

TEST_CASE("translate_contains is a coefficient pattern") {
  const GroupElement a = GroupElement::single(0, -2) + GroupElement::unit(4);
  const Translate t{a};
  CHECK(translate_contains(t, a + GroupElement::unit(7)));
  CHECK(!translate_contains(t, a));
  CHECK(!translate_contains(
      t, a + GroupElement::unit(2) + GroupElement::unit(3)));
  CHECK(!translate_contains(t, a + GroupElement::single(3, 2)));
}

TEST_CASE("translates_disjoint matches the difference pattern") {
  const GroupElement a = GroupElement::single(1, 4);
  CHECK(!translates_disjoint(Translate{a}, Translate{a}));
  CHECK(!translates_disjoint(
      Translate{a + GroupElement::unit(3) - GroupElement::unit(5)},
      Translate{a}));
  CHECK(translates_disjoint(Translate{a + GroupElement::single(3, 2)},
                            Translate{a}));
}

TEST_CASE("x in t implies the witness translate x - b_j meets t") {
  const GroupElement a = GroupElement::single(2, -1);
  const Translate t{a};
  const GroupElement x = a + GroupElement::unit(5);
  REQUIRE(translate_contains(t, x));
  for (unsigned j : {0u, 1u, 3u, 8u}) {
    const Translate witness{x - GroupElement::unit(j)};
    CHECK(!translates_disjoint(t, witness));
  }
}

TEST_CASE("symbolic disjointness agrees with the brute-force numeric check") {
  BasisSpec& basis = shared_basis();
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> index_dist(0, 9);
  std::uniform_int_distribution<int> coeff_dist(-3, 3);

  const auto numeric_intersects = [&basis](const Translate& t,
                                           const Translate& u) {
    for (unsigned p = 0; p <= 40; ++p) {
      for (unsigned q = 0; q <= 40; ++q) {
        const GroupElement left = t.offset + GroupElement::unit(p);
        const GroupElement right = u.offset + GroupElement::unit(q);
        if (cmp_exact(left, right, basis) == std::strong_ordering::equal) {
          return true;
        }
      }
    }
    return false;
  };

  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    GroupElement a, b;
    for (int i = 0; i < 4; ++i) {
      a.set_coeff(static_cast<unsigned>(index_dist(rng)), coeff_dist(rng));
      b.set_coeff(static_cast<unsigned>(index_dist(rng)), coeff_dist(rng));
    }
    const Translate t{a};
    const Translate u{b};
    if (translates_disjoint(t, u)) {
      CHECK(!numeric_intersects(t, u));
    } else {
      CHECK(numeric_intersects(t, u));
    }
    ++checked;
  }
  CHECK(checked == 12);

  // Constructed witnesses d = e_q - e_p intersect both ways.
  for (const auto& [p, q] : std::vector<std::pair<unsigned, unsigned>>{
           {3, 5}, {0, 1}, {2, 17}}) {
    const Translate t{GroupElement::single(8, 2)};
    const Translate u{t.offset + GroupElement::unit(q) -
                      GroupElement::unit(p)};
    CHECK(!translates_disjoint(t, u));
    CHECK(numeric_intersects(t, u));
  }
}

TEST_CASE("translate_in_interval uses the extreme points b_0, b_1") {
  BasisSpec& basis = shared_basis();
  const Translate at_zero{GroupElement{}};
  CHECK(translate_in_interval(at_zero,
                              rational_interval("-1", "1", false, false,
                                                basis),
                              basis));
  CHECK(!translate_in_interval(at_zero,
                               rational_interval("0", "1", false, false,
                                                 basis),
                               basis));

  // (c_0 - b_0) + B inside [c_0, c_1] when length > 8 eps.
  const RealInterval J = rational_interval("0", "1", true, true, basis);
  const ExactPoint c0 = canonicalize(J.lo, basis);
  REQUIRE(c0.offset == 0);
  const Translate seed{c0.group_part - GroupElement::unit(0)};
  CHECK(translate_in_interval(seed, J, basis));
}

TEST_CASE("translate_in_interval decides offset + B as a whole") {
  // b_0 and b_1 are the extreme points of B, so the two endpoint tests are
  // equivalent to containment of the full translate; spot-check the first
  // 40 elements numerically.
  BasisSpec& basis = shared_basis();
  const RealInterval J = rational_interval("0", "1", true, false, basis);
  const Translate inside{GroupElement::single(0, -6)};   // around 0.45
  REQUIRE(translate_in_interval(inside, J, basis));
  for (unsigned n = 0; n <= 40; ++n) {
    CHECK(point_in_interval(inside.offset + GroupElement::unit(n), J, basis));
  }
  const Translate outside{GroupElement::single(0, -13)};  // 0.975 + B spills
  REQUIRE(!translate_in_interval(outside, J, basis));
  bool some_point_out = false;
  for (unsigned n = 0; n <= 40 && !some_point_out; ++n) {
    some_point_out =
        !point_in_interval(outside.offset + GroupElement::unit(n), J, basis);
  }
  CHECK(some_point_out);
}

TEST_CASE("point_in_interval honors the endpoint flags") {
  BasisSpec& basis = shared_basis();
  const RealInterval closed = rational_interval("0", "1", true, true, basis);
  const RealInterval open = rational_interval("0", "1", false, false, basis);
  const ExactPoint zero = point_from(Rational(0));
  CHECK(point_in_interval(zero, closed, basis));
  CHECK(!point_in_interval(zero, open, basis));
  CHECK(point_in_interval(point_from(parse_rational("1/2")), open, basis));
}

TEST_CASE("rational_in_G recognizes exactly the multiples of q_0") {
  BasisSpec& basis = shared_basis();
  const auto zero = rational_in_G(Rational(0), basis);
  REQUIRE(zero.has_value());
  CHECK(zero->is_zero());

  const auto q0 = rational_in_G(basis.q(0), basis);
  REQUIRE(q0.has_value());
  CHECK(*q0 == GroupElement::unit(0));

  CHECK(!rational_in_G(basis.q(0) / 2, basis).has_value());
  CHECK(!rational_in_G(Rational(1), basis).has_value());
  const auto multiple = rational_in_G(-13 * basis.q(0), basis);
  REQUIRE(multiple.has_value());
  CHECK(*multiple == GroupElement::single(0, -13));
}

TEST_CASE("find_group_element_in: height order and membership") {
  BasisSpec& basis = shared_basis();
  const Rational eps = basis.epsilon();

  // 0 lies in (-eps, eps) and has height 0.
  const RealInterval around_zero = make_interval(
      point_from(Rational(-eps)), point_from(Rational(eps)), false, false,
      basis);
  CHECK(find_group_element_in(around_zero, basis, kDefaultHeightCap)
            .is_zero());

  // Independent oracle: the plain height scan reimplemented.
  const auto scan_oracle = [&basis](const RealInterval& J) {
    for (long h = 0;; ++h) {
      REQUIRE(h <= 64);
      for (long n0 = -h; n0 <= h; ++n0) {
        const long r = h - std::labs(n0);
        for (const long n1 : (r == 0 ? std::vector<long>{0}
                                     : std::vector<long>{-r, r})) {
          GroupElement g;
          g.set_coeff(0, n0);
          g.set_coeff(1, n1);
          if (point_in_interval(g, J, basis)) return g;
        }
      }
    }
  };

  // b_0 sits inside (b_0 - eps', b_0 + eps') by construction; the scan may
  // legitimately find another height-1 element first, so the oracle decides.
  const RealInterval around_b0 = make_interval(
      point_from(Rational(basis.q(0) - basis.eps_prime())),
      point_from(Rational(basis.q(0) + basis.eps_prime())), false, false,
      basis);
  const GroupElement found =
      find_group_element_in(around_b0, basis, kDefaultHeightCap);
  CHECK(point_in_interval(found, around_b0, basis));
  CHECK(found == scan_oracle(around_b0));

  const RealInterval mid = rational_interval("49/100", "51/100", false, false,
                                             basis);
  const GroupElement in_mid =
      find_group_element_in(mid, basis, kDefaultHeightCap);
  CHECK(point_in_interval(in_mid, mid, basis));
  CHECK(in_mid == scan_oracle(mid));

  // Determinism.
  CHECK(find_group_element_in(mid, basis, kDefaultHeightCap) == in_mid);
}

TEST_CASE("find_group_element_in: narrow intervals use the convergent route") {
  BasisSpec& basis = shared_basis();
  const RealInterval narrow = rational_interval("4999/10000", "5001/10000",
                                                false, false, basis);
  const GroupElement g = find_group_element_in(narrow, basis,
                                               kDefaultHeightCap);
  CHECK(point_in_interval(g, narrow, basis));
  // Far outside the plain-scan budget.
  CHECK(g.mass() > 48);
  // The reject filter skips an unwanted hit and still lands inside.
  const GroupElement other = find_group_element_in(
      narrow, basis, kDefaultHeightCap,
      [&g](const GroupElement& candidate) { return candidate == g; });
  CHECK(point_in_interval(other, narrow, basis));
  CHECK(!(other == g));
}

TEST_CASE("find_group_element_in respects the height cap") {
  BasisSpec& basis = shared_basis();
  const RealInterval far = rational_interval("100", "100001/1000", false,
                                             false, basis);
  CHECK_THROWS_AS(find_group_element_in(far, basis, Integer(3)),
                  HeightCapExceeded);
}

TEST_CASE("make_interval rejects empty and reversed intervals") {
  BasisSpec& basis = shared_basis();
  CHECK_THROWS_AS(make_interval(point_from(Rational(1)),
                                point_from(Rational(0)), true, true, basis),
                  InvariantViolation);
  CHECK_THROWS_AS(make_interval(point_from(Rational(1)),
                                point_from(Rational(1)), true, true, basis),
                  InvariantViolation);
}
