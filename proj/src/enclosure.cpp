#include "steinhaus/enclosure.hpp"

#include "ival.hpp"
#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

bool width_bound_holds(const RealEnclosure& e) {
  Rational scale = abs(e.lo);
  if (scale < 1) scale = 1;
  Rational budget = 2 * scale;
  mpq_div_2exp(budget.get_mpq_t(), budget.get_mpq_t(), e.precision_bits);
  return e.width() <= budget;
}

}  // namespace

RealEnclosure theta_enclosure(const ThetaDescriptor& /*theta*/,
                              unsigned precision_bits) {
  Rational lo, hi;
  detail::e_bounds(precision_bits, lo, hi);
  const detail::Ival rounded = detail::Ival::from_bounds(
      lo, hi, static_cast<mpfr_prec_t>(precision_bits) + 4);
  RealEnclosure out{rounded.lo_rational(), rounded.hi_rational(),
                    precision_bits};
  if (!width_bound_holds(out)) {
    throw InvariantViolation("theta enclosure exceeds its width budget");
  }
  return out;
}

RealEnclosure power_enclosure(const ThetaDescriptor& theta, unsigned n,
                              unsigned precision_bits) {
  if (n == 0) return RealEnclosure{Rational(1), Rational(1), precision_bits};
  if (n == 1) return theta_enclosure(theta, precision_bits);
  mpfr_prec_t work = static_cast<mpfr_prec_t>(precision_bits) + 32;
  while (true) {
    Rational lo, hi;
    detail::theta_power_bounds(theta.kind, n, work, lo, hi);
    const detail::Ival rounded = detail::Ival::from_bounds(
        lo, hi, static_cast<mpfr_prec_t>(precision_bits) + 4);
    RealEnclosure out{rounded.lo_rational(), rounded.hi_rational(),
                      precision_bits};
    if (width_bound_holds(out)) return out;
    work *= 2;
  }
}

}  // namespace steinhaus
