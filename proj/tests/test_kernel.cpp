#include <doctest.h>

#include <random>

#include "steinhaus/basis.hpp"
#include "steinhaus/enclosure.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/symbolic.hpp"

using namespace steinhaus;

namespace {

// Independent oracle: exact rational bounds on e from the series sum 1/k!,
// summed term by term, with the tail below 2/(K+1)!. Deliberately a
// different code path from the library's enclosure construction.
void e_oracle(unsigned terms, Rational& lo, Rational& hi) {
  Rational sum = 0;
  Integer factorial = 1;
  for (unsigned k = 0; k <= terms; ++k) {
    if (k > 0) factorial *= k;
    sum += Rational(1) / Rational(factorial);
  }
  lo = sum;
  hi = sum + Rational(2) / Rational(factorial * (terms + 1));
}

Rational pow2_neg(unsigned k) {
  Rational out(1);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), k);
  return out;
}

BasisSpec& shared_basis() {
  static BasisSpec basis = [] {
    BasisSpec b = new_basis(parse_rational("1/20"));
    extend_basis(b, 210);
    return b;
  }();
  return basis;
}

}  // namespace

TEST_CASE("theta enclosure contains e at every precision") {
  // An oracle far tighter than any tested enclosure: its interval around e
  // sits strictly inside every enclosure that contains e.
  Rational oracle_lo, oracle_hi;
  e_oracle(90, oracle_lo, oracle_hi);  // tail < 1.5e-140
  for (unsigned bits : {1u, 4u, 16u, 64u, 256u}) {
    const RealEnclosure e = theta_enclosure(ThetaDescriptor{}, bits);
    CHECK(e.lo <= oracle_lo);
    CHECK(e.hi >= oracle_hi);
  }
  // (E, 4) brackets 2.71828 directly.
  const RealEnclosure e4 = theta_enclosure(ThetaDescriptor{}, 4);
  CHECK(e4.lo <= parse_rational("271828/100000"));
  CHECK(e4.hi >= parse_rational("271828/100000"));
}

TEST_CASE("theta enclosures nest as precision grows") {
  RealEnclosure coarse = theta_enclosure(ThetaDescriptor{}, 4);
  for (unsigned bits : {8u, 16u, 64u, 128u, 512u}) {
    const RealEnclosure fine = theta_enclosure(ThetaDescriptor{}, bits);
    CHECK(coarse.contains(fine));
    coarse = fine;
  }
}

TEST_CASE("theta enclosure meets the 64-bit width budget") {
  const RealEnclosure e = theta_enclosure(ThetaDescriptor{}, 64);
  Rational oracle_lo, oracle_hi;
  e_oracle(40, oracle_lo, oracle_hi);
  CHECK(e.width() <= pow2_neg(63) * oracle_hi);
}

TEST_CASE("power enclosures") {
  const RealEnclosure one = power_enclosure(ThetaDescriptor{}, 0, 64);
  CHECK(one.is_point());
  CHECK(one.lo == 1);

  Rational oracle_lo, oracle_hi;
  e_oracle(40, oracle_lo, oracle_hi);

  const RealEnclosure first = power_enclosure(ThetaDescriptor{}, 1, 64);
  CHECK(first.lo <= oracle_lo);
  CHECK(first.hi >= oracle_hi);

  // e^2 against the squared oracle interval; 7.3890560 < e^2 < 7.3890561.
  const RealEnclosure square = power_enclosure(ThetaDescriptor{}, 2, 64);
  CHECK(square.lo <= oracle_lo * oracle_lo);
  CHECK(square.hi >= oracle_hi * oracle_hi);
  CHECK(square.lo <= parse_rational("73890561/10000000"));
  CHECK(square.hi >= parse_rational("73890560/10000000"));
}

TEST_CASE("eval_enclosure point cases") {
  const BasisSpec& basis = shared_basis();
  const RealEnclosure zero = eval_enclosure({}, basis, 64);
  CHECK(zero.is_point());
  CHECK(zero.lo == 0);

  const RealEnclosure q0 = eval_enclosure({{0, Integer(1)}}, basis, 64);
  CHECK(q0.is_point());
  CHECK(q0.lo == basis.q(0));

  // {1 -> 2} contains 2 q_1 e: oracle bounds scaled by the exact rational.
  Rational oracle_lo, oracle_hi;
  e_oracle(40, oracle_lo, oracle_hi);
  const RealEnclosure twice = eval_enclosure({{1, Integer(2)}}, basis, 64);
  CHECK(twice.lo <= 2 * basis.q(1) * oracle_lo);
  CHECK(twice.hi >= 2 * basis.q(1) * oracle_hi);
}

TEST_CASE("eval_enclosure rejects uncommitted indices") {
  BasisSpec basis = new_basis(parse_rational("1/20"));
  CHECK_THROWS_AS(eval_enclosure({{7, Integer(1)}}, basis, 64),
                  UnknownBasisIndex);
}

TEST_CASE("enclosure soundness: nesting across precisions") {
  BasisSpec& basis = shared_basis();
  extend_basis(basis, 20);
  std::mt19937 rng(20260809);
  std::uniform_int_distribution<int> index_dist(0, 20);
  std::uniform_int_distribution<int> coeff_dist(-10, 10);
  std::uniform_int_distribution<int> support_dist(1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::map<unsigned, Integer> coeffs;
    const int support = support_dist(rng);
    for (int i = 0; i < support; ++i) {
      const int coeff = coeff_dist(rng);
      if (coeff != 0) coeffs[static_cast<unsigned>(index_dist(rng))] = coeff;
    }
    for (unsigned p : {16u, 64u, 256u}) {
      const RealEnclosure outer = eval_enclosure(coeffs, basis, p);
      const RealEnclosure inner = eval_enclosure(coeffs, basis, 4 * p);
      CHECK(outer.contains(inner));
    }
  }
}

TEST_CASE("cmp_exact basics") {
  const BasisSpec& basis = shared_basis();
  const ExactPoint g{GroupElement::single(3, 2) + GroupElement::unit(7), 0};
  CHECK(cmp_exact(g, g, basis) == std::strong_ordering::equal);

  // q_0 is negative by the builder rule.
  CHECK(cmp_exact(point_from(GroupElement::unit(0)),
                  point_from(Rational(0)),
                  basis) == std::strong_ordering::less);

  // b_2n > b_0 for n = 1..100.
  for (unsigned n = 1; n <= 100; ++n) {
    CHECK(cmp_exact(GroupElement::unit(2 * n), GroupElement::unit(0), basis) ==
          std::strong_ordering::greater);
  }
}

TEST_CASE("cmp_exact trichotomy and antisymmetry") {
  const BasisSpec& basis = shared_basis();
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> index_dist(0, 12);
  std::uniform_int_distribution<int> coeff_dist(-6, 6);
  std::uniform_int_distribution<int> offset_dist(-40, 40);
  for (int trial = 0; trial < 200; ++trial) {
    GroupElement ga, gb;
    for (int i = 0; i < 3; ++i) {
      ga.set_coeff(static_cast<unsigned>(index_dist(rng)), coeff_dist(rng));
      gb.set_coeff(static_cast<unsigned>(index_dist(rng)), coeff_dist(rng));
    }
    const ExactPoint a{ga, Rational(offset_dist(rng), 7)};
    const ExactPoint b{gb, Rational(offset_dist(rng), 7)};
    const auto ab = cmp_exact(a, b, basis);
    const auto ba = cmp_exact(b, a, basis);
    if (ab == std::strong_ordering::less) {
      CHECK(ba == std::strong_ordering::greater);
    } else if (ab == std::strong_ordering::greater) {
      CHECK(ba == std::strong_ordering::less);
    } else {
      CHECK(ba == std::strong_ordering::equal);
    }
  }
}

TEST_CASE("identical operands compare equal without refinement") {
  const BasisSpec& basis = shared_basis();
  const ExactPoint x{GroupElement::single(5, 3), parse_rational("2/3")};
  detail::reset_kernel_stats();
  CHECK(cmp_exact(x, x, basis) == std::strong_ordering::equal);
  CHECK(detail::kernel_stats().refinements == 0);
}

TEST_CASE("index-0 values compare by rational arithmetic alone") {
  const BasisSpec& basis = shared_basis();
  // value(x) = 5 q_0 + 1/3 = -1/24; value(y) = -2 q_0 - 7/9 = -113/180.
  const ExactPoint x{GroupElement::single(0, 5), parse_rational("1/3")};
  const ExactPoint y{GroupElement::single(0, -2), parse_rational("-7/9")};
  detail::reset_kernel_stats();
  CHECK(cmp_exact(x, y, basis) == std::strong_ordering::greater);
  CHECK(cmp_exact(y, x, basis) == std::strong_ordering::less);
  // Same value through the two representations: 5 q_0 vs offset 5 q_0.
  const ExactPoint lhs{GroupElement::single(0, 5), 0};
  const ExactPoint rhs{GroupElement{}, 5 * basis.q(0)};
  CHECK(cmp_exact(lhs, rhs, basis) == std::strong_ordering::equal);
  CHECK(detail::kernel_stats().refinements == 0);
}

TEST_CASE("precision cap turns into PrecisionExhausted, never Equal") {
  BasisSpec basis = new_basis(parse_rational("1/20"));
  // A rational within ~2^-128 of b_1: one 64-bit probe cannot separate the
  // two, and a cap of 64 forbids refining further.
  const Rational near_b1 =
      eval_point(point_from(GroupElement::unit(1)), basis, 128).midpoint();
  basis.set_precision_cap(64);
  CHECK_THROWS_AS(
      cmp_exact(point_from(GroupElement::unit(1)), point_from(near_b1),
                basis),
      PrecisionExhausted);
  // With the default cap the same comparison resolves to a strict order.
  basis.set_precision_cap(kDefaultPrecisionCap);
  CHECK(cmp_exact(point_from(GroupElement::unit(1)), point_from(near_b1),
                  basis) != std::strong_ordering::equal);
}
