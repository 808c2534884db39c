#pragma once

#include <mpfr.h>

#include "steinhaus/enclosure.hpp"
#include "steinhaus/rational.hpp"

namespace steinhaus::detail {

// Directed-rounding interval [lo, hi] with mpfr endpoints at a fixed working
// precision. All rounding is outward, so the interval always contains the
// exact result of the operation it models. Endpoints are dyadic by
// construction (mpfr significand * 2^exp) and convert exactly to Rational.
class Ival {
 public:
  explicit Ival(mpfr_prec_t prec);
  Ival(const Ival& other);
  Ival(Ival&& other) noexcept;
  Ival& operator=(const Ival& other);
  Ival& operator=(Ival&& other) noexcept;
  ~Ival();

  static Ival from_rational(const Rational& v, mpfr_prec_t prec);
  static Ival from_bounds(const Rational& lo, const Rational& hi,
                          mpfr_prec_t prec);

  void add(const Ival& other);
  void mul(const Ival& other);
  void scale(const Rational& factor);
  void shift(const Rational& offset);

  // Interval power by binary powering; n = 0 yields [1, 1].
  Ival pow(unsigned n) const;

  // Reciprocal of an interval with lo > 0. Throws InvariantViolation
  // otherwise.
  Ival recip_positive() const;

  // -1 if hi < 0, +1 if lo > 0, 0 when the interval reaches zero.
  int sign() const;
  bool contains_zero() const { return sign() == 0; }

  Rational lo_rational() const;
  Rational hi_rational() const;
  Rational width() const { return hi_rational() - lo_rational(); }

  mpfr_prec_t precision() const { return prec_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
  mpfr_prec_t prec_;
};

// Exact rational bounds on e: lo is the partial sum S_K of sum 1/k!, hi is
// S_K + 2/(K+1)!, with K the smallest index making the tail bound at most
// 2^-(precision_bits + 2).
void e_bounds(unsigned precision_bits, Rational& lo, Rational& hi);

// Dyadic bounds on theta^n from a thread-local cache keyed by (n, precision
// level). Levels are powers of two so repeated evaluations share work.
void theta_power_bounds(ThetaKind kind, unsigned n, mpfr_prec_t prec,
                        Rational& lo, Rational& hi);

}  // namespace steinhaus::detail
