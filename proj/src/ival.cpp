#include "ival.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <utility>

#include "steinhaus/errors.hpp"

namespace steinhaus::detail {

Ival::Ival(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Ival::Ival(const Ival& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Ival::Ival(Ival&& other) noexcept : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Ival& Ival::operator=(const Ival& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.prec_);
    mpfr_set_prec(hi_, other.prec_);
    prec_ = other.prec_;
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Ival& Ival::operator=(Ival&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    std::swap(prec_, other.prec_);
  }
  return *this;
}

Ival::~Ival() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Ival Ival::from_rational(const Rational& v, mpfr_prec_t prec) {
  Ival out(prec);
  mpfr_set_q(out.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, v.get_mpq_t(), MPFR_RNDU);
  return out;
}

Ival Ival::from_bounds(const Rational& lo, const Rational& hi,
                       mpfr_prec_t prec) {
  Ival out(prec);
  mpfr_set_q(out.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return out;
}

void Ival::add(const Ival& other) {
  mpfr_add(lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, other.hi_, MPFR_RNDU);
}

void Ival::mul(const Ival& other) {
  mpfr_t cand;
  mpfr_t best_lo;
  mpfr_t best_hi;
  mpfr_init2(cand, prec_);
  mpfr_init2(best_lo, prec_);
  mpfr_init2(best_hi, prec_);

  const mpfr_srcptr a[2] = {lo_, hi_};
  const mpfr_srcptr b[2] = {other.lo_, other.hi_};
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(cand, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(cand, best_lo) < 0) mpfr_set(best_lo, cand, MPFR_RNDD);
      mpfr_mul(cand, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(cand, best_hi) > 0) mpfr_set(best_hi, cand, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_set(lo_, best_lo, MPFR_RNDD);
  mpfr_set(hi_, best_hi, MPFR_RNDU);
  mpfr_clear(cand);
  mpfr_clear(best_lo);
  mpfr_clear(best_hi);
}

void Ival::scale(const Rational& factor) {
  if (sgn(factor) >= 0) {
    mpfr_mul_q(lo_, lo_, factor.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi_, hi_, factor.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_t tmp;
    mpfr_init2(tmp, prec_);
    mpfr_mul_q(tmp, hi_, factor.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi_, lo_, factor.get_mpq_t(), MPFR_RNDU);
    mpfr_set(lo_, tmp, MPFR_RNDD);
    mpfr_clear(tmp);
  }
}

void Ival::shift(const Rational& offset) {
  mpfr_add_q(lo_, lo_, offset.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(hi_, hi_, offset.get_mpq_t(), MPFR_RNDU);
}

Ival Ival::pow(unsigned n) const {
  Ival acc = from_rational(Rational(1), prec_);
  if (n == 0) return acc;
  Ival base(*this);
  while (true) {
    if (n & 1u) acc.mul(base);
    n >>= 1u;
    if (n == 0) break;
    Ival sq(base);
    sq.mul(base);
    base = std::move(sq);
  }
  return acc;
}

Ival Ival::recip_positive() const {
  if (mpfr_sgn(lo_) <= 0) {
    throw InvariantViolation("reciprocal of an interval touching zero");
  }
  Ival out(prec_);
  mpfr_ui_div(out.lo_, 1, hi_, MPFR_RNDD);
  mpfr_ui_div(out.hi_, 1, lo_, MPFR_RNDU);
  return out;
}

int Ival::sign() const {
  if (mpfr_sgn(hi_) < 0) return -1;
  if (mpfr_sgn(lo_) > 0) return 1;
  return 0;
}

Rational Ival::lo_rational() const {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), lo_);
  return out;
}

Rational Ival::hi_rational() const {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), hi_);
  return out;
}

void e_bounds(unsigned precision_bits, Rational& lo, Rational& hi) {
  // Smallest K with 2/(K+1)! <= 2^-(precision_bits + 2).
  Integer threshold = 1;
  mpz_mul_2exp(threshold.get_mpz_t(), threshold.get_mpz_t(),
               precision_bits + 3);
  unsigned k_terms = 0;
  Integer next_factorial = 1;  // (K+1)!
  while (next_factorial < threshold) {
    ++k_terms;
    next_factorial *= (k_terms + 1);
  }
  // S_K = sum of K!/k! over k = 0..K, divided by K!.
  Integer factorial = next_factorial / (k_terms + 1);  // K!
  Integer term = 1;                                    // K!/k!, from k = K
  Integer acc = 1;
  for (unsigned k = k_terms; k >= 1; --k) {
    term *= k;
    acc += term;
  }
  lo = Rational(acc) / Rational(factorial);
  lo.canonicalize();
  hi = lo + Rational(2) / Rational(next_factorial);
  hi.canonicalize();
}

namespace {

struct PowerKey {
  unsigned n;
  mpfr_prec_t level;
  friend bool operator<(const PowerKey& a, const PowerKey& b) {
    return a.n != b.n ? a.n < b.n : a.level < b.level;
  }
};

}  // namespace

void theta_power_bounds(ThetaKind /*kind*/, unsigned n, mpfr_prec_t prec,
                        Rational& lo, Rational& hi) {
  const mpfr_prec_t level = static_cast<mpfr_prec_t>(
      std::bit_ceil(static_cast<unsigned long>(std::max<mpfr_prec_t>(prec, 64))));
  thread_local std::map<PowerKey, std::pair<Rational, Rational>> cache;
  const PowerKey key{n, level};
  auto it = cache.find(key);
  if (it == cache.end()) {
    // Working precision absorbs the ~n ulp of outward rounding accumulated
    // by binary powering.
    const mpfr_prec_t work = level + 2 * (std::bit_width(n | 1u) + 4);
    Rational e_lo, e_hi;
    e_bounds(static_cast<unsigned>(work), e_lo, e_hi);
    const Ival powered = Ival::from_bounds(e_lo, e_hi, work).pow(n);
    it = cache
             .emplace(key, std::make_pair(powered.lo_rational(),
                                          powered.hi_rational()))
             .first;
  }
  lo = it->second.first;
  hi = it->second.second;
}

}  // namespace steinhaus::detail
