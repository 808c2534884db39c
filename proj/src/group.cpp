#include "steinhaus/group.hpp"

#include <utility>
#include <vector>

#include "ival.hpp"
#include "steinhaus/errors.hpp"

namespace steinhaus {

RealInterval make_interval(ExactPoint lo, ExactPoint hi, bool lo_closed,
                           bool hi_closed, const BasisSpec& basis) {
  if (cmp_exact(lo, hi, basis) != std::strong_ordering::less) {
    throw InvariantViolation("interval endpoints must satisfy lo < hi");
  }
  return RealInterval{std::move(lo), std::move(hi), lo_closed, hi_closed};
}

RealInterval interior(const RealInterval& interval) {
  return RealInterval{interval.lo, interval.hi, false, false};
}

ExactPoint interval_length(const RealInterval& interval) {
  return point_sub(interval.hi, interval.lo);
}

bool translate_contains(const Translate& t, const GroupElement& x) {
  const GroupElement d = x - t.offset;
  return d.support_size() == 1 && d.coeffs().begin()->second == 1;
}

bool translates_disjoint(const Translate& t, const Translate& u) {
  const GroupElement d = t.offset - u.offset;
  if (d.is_zero()) return false;
  if (d.support_size() == 2) {
    const auto first = d.coeffs().begin();
    const auto second = std::next(first);
    if ((first->second == 1 && second->second == -1) ||
        (first->second == -1 && second->second == 1)) {
      return false;
    }
  }
  return true;
}

bool point_in_interval(const ExactPoint& x, const RealInterval& interval,
                       const BasisSpec& basis) {
  const auto lo_cmp = cmp_exact(x, interval.lo, basis);
  if (lo_cmp == std::strong_ordering::less) return false;
  if (lo_cmp == std::strong_ordering::equal && !interval.lo_closed) {
    return false;
  }
  const auto hi_cmp = cmp_exact(x, interval.hi, basis);
  if (hi_cmp == std::strong_ordering::greater) return false;
  if (hi_cmp == std::strong_ordering::equal && !interval.hi_closed) {
    return false;
  }
  return true;
}

bool point_in_interval(const GroupElement& x, const RealInterval& interval,
                       const BasisSpec& basis) {
  return point_in_interval(point_from(x), interval, basis);
}

bool translate_in_interval(const Translate& t, const RealInterval& interval,
                           const BasisSpec& basis) {
  return point_in_interval(t.offset + GroupElement::unit(0), interval,
                           basis) &&
         point_in_interval(t.offset + GroupElement::unit(1), interval, basis);
}

std::optional<GroupElement> rational_in_G(const Rational& r,
                                          const BasisSpec& basis) {
  const Rational multiple = r / basis.q(0);
  if (!is_integer(multiple)) return std::nullopt;
  return GroupElement::single(0, Integer(multiple.get_num()));
}

namespace {

constexpr long kPlainScanHeightLimit = 48;

GroupElement pair_element(const Integer& n0, const Integer& n1) {
  GroupElement g;
  g.set_coeff(0, n0);
  g.set_coeff(1, n1);
  return g;
}

// Convergents p/q of alpha = b_1 / |b_0|, computed from enclosures of alpha.
// Partial quotients are extracted while the interval determines them
// unambiguously; on ambiguity the whole expansion restarts at doubled
// precision, so the result is deterministic.
std::vector<std::pair<Integer, Integer>> alpha_convergents(
    const BasisSpec& basis, std::size_t count) {
  using detail::Ival;
  const Rational inv_u = Rational(-1) / basis.q(0);  // 1/|b_0|, q_0 < 0
  for (mpfr_prec_t prec = 256;; prec *= 2) {
    Rational tlo, thi;
    detail::theta_power_bounds(basis.theta().kind, 1, prec, tlo, thi);
    Ival x = Ival::from_bounds(tlo, thi, prec);
    x.scale(basis.q(1) * inv_u);

    std::vector<std::pair<Integer, Integer>> out;
    Integer p_prev = 1, q_prev = 0, p_cur, q_cur;
    bool first = true;
    bool ambiguous = false;
    while (out.size() < count) {
      const Rational lo = x.lo_rational();
      const Rational hi = x.hi_rational();
      Integer floor_lo, floor_hi;
      mpz_fdiv_q(floor_lo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
      mpz_fdiv_q(floor_hi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
      if (floor_lo != floor_hi) {
        ambiguous = true;
        break;
      }
      const Integer a = floor_lo;
      Integer p_next, q_next;
      if (first) {
        p_next = a;
        q_next = 1;
        first = false;
      } else {
        p_next = a * p_cur + p_prev;
        q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
      }
      p_cur = p_next;
      q_cur = q_next;
      out.emplace_back(p_cur, q_cur);

      x.shift(Rational(-a));
      if (x.sign() <= 0) {
        ambiguous = true;
        break;
      }
      x = x.recip_positive();
    }
    if (!ambiguous) return out;
    if (prec > 1u << 24) {
      throw InvariantViolation("continued fraction of b_1/b_0 stalled");
    }
  }
}

}  // namespace

GroupElement find_group_element_in(
    const RealInterval& interval, const BasisSpec& basis,
    const Integer& height_cap,
    const std::function<bool(const GroupElement&)>& reject) {
  const auto admissible = [&](const GroupElement& g) {
    return point_in_interval(g, interval, basis) && !(reject && reject(g));
  };

  // Plain scan in increasing height, lexicographic (n_0, n_1) tie-break.
  long plain_limit = kPlainScanHeightLimit;
  if (height_cap < plain_limit) plain_limit = height_cap.get_si();
  for (long h = 0; h <= plain_limit; ++h) {
    for (long n0 = -h; n0 <= h; ++n0) {
      const long r = h - std::abs(n0);
      if (r == 0) {
        const GroupElement g = pair_element(n0, 0);
        if (admissible(g)) return g;
      } else {
        for (const long n1 : {-r, r}) {
          const GroupElement g = pair_element(n0, n1);
          if (admissible(g)) return g;
        }
      }
    }
  }

  // Continued-fraction route: step through the interval with the small
  // combination d_k = p_k e_0 + q_k e_1. Candidate values j * value(d_k)
  // land within |value(d_k)| of any target, so once |value(d_k)| is below
  // half the usable band some multiple lands inside it.
  RealEnclosure lo_val, hi_val;
  Rational band_lo, band_hi;
  for (unsigned p = 192;; p *= 2) {
    lo_val = eval_point(interval.lo, basis, p);
    hi_val = eval_point(interval.hi, basis, p);
    const Rational raw_width = hi_val.lo - lo_val.hi;
    if (raw_width > 0) {
      band_lo = lo_val.hi + raw_width / 8;
      band_hi = hi_val.lo - raw_width / 8;
      break;
    }
    if (p > basis.precision_cap()) {
      throw PrecisionExhausted("interval endpoints too close to separate");
    }
  }
  const Rational target = (band_lo + band_hi) / 2;
  const Rational half_band = (band_hi - band_lo) / 2;

  std::size_t depth = 12;
  std::vector<std::pair<Integer, Integer>> convergents =
      alpha_convergents(basis, depth);
  for (std::size_t k = 0;; ++k) {
    if (k >= convergents.size()) {
      depth += 8;
      convergents = alpha_convergents(basis, depth);
      if (k >= convergents.size()) {
        throw InvariantViolation("convergent supply exhausted");
      }
    }
    const GroupElement step =
        pair_element(convergents[k].first, convergents[k].second);
    RealEnclosure step_val;
    unsigned p = 128;
    for (;; p *= 2) {
      step_val = eval_point(point_from(step), basis, p);
      if (!step_val.contains(Rational(0))) break;
      if (p > basis.precision_cap()) {
        throw PrecisionExhausted("convergent step value unresolved");
      }
    }
    const Rational lo_mag = abs(step_val.lo);
    const Rational hi_mag = abs(step_val.hi);
    const Rational step_mag = lo_mag > hi_mag ? lo_mag : hi_mag;
    if (step_mag > half_band) continue;  // net still too coarse

    const Rational ratio = target / step_val.midpoint();
    const Integer j0 = round_nearest(ratio);
    const Integer step_height = abs(convergents[k].first) +
                                abs(convergents[k].second);
    bool any_candidate_in_range = false;
    for (long s = 0; s <= 64; ++s) {
      for (const long sign : {1, -1}) {
        if (s == 0 && sign < 0) continue;
        const Integer j = j0 + sign * s;
        if (j == 0) continue;
        if (abs(j) * step_height > height_cap) continue;
        any_candidate_in_range = true;
        GroupElement g;
        g.set_coeff(0, j * convergents[k].first);
        g.set_coeff(1, j * convergents[k].second);
        if (admissible(g)) return g;
      }
    }
    if (!any_candidate_in_range) {
      throw HeightCapExceeded("no group element found within the height cap");
    }
  }
}

}  // namespace steinhaus
