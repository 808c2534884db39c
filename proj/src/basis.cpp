#include "steinhaus/basis.hpp"

#include <string>
#include <utility>
#include <vector>

#include "ival.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/symbolic.hpp"

namespace steinhaus {

namespace {

using detail::Ival;

struct RawTerm {
  Rational coeff;
  unsigned power;
};

// Sign of sum coeff_i * theta^power_i + offset for raw (uncommitted)
// coefficients, by doubling-precision refinement. Nonzero rational
// coefficients on distinct powers make the combination nonzero, so this
// terminates below the cap in practice; the cap turns a kernel bug into a
// hard error instead of a wrong sign.
int raw_sign(const std::vector<RawTerm>& terms, const Rational& offset,
             const ThetaDescriptor& theta, unsigned cap) {
  for (unsigned p = 64;; p *= 2) {
    Ival acc = Ival::from_rational(offset, p);
    for (const RawTerm& t : terms) {
      Rational lo, hi;
      detail::theta_power_bounds(theta.kind, t.power, p, lo, hi);
      Ival term = Ival::from_bounds(lo, hi, p);
      term.scale(t.coeff);
      acc.add(term);
    }
    const int s = acc.sign();
    if (s != 0) return s;
    if (p > cap) {
      throw PrecisionExhausted("window check unresolved at the precision cap");
    }
  }
}

Rational pow2(long k) {
  Rational out(1);
  if (k >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(k));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(-k));
  }
  return out;
}

// Enclosure of the rounding target mid / theta^n, where mid is given as
// mid_rational + mid_theta_coeff * theta (the odd windows hang off b_1).
Ival target_enclosure(const Rational& mid_rational,
                      const Rational& mid_theta_coeff, unsigned n,
                      const ThetaDescriptor& theta, mpfr_prec_t work) {
  Rational lo, hi;
  detail::theta_power_bounds(theta.kind, 1, work, lo, hi);
  Ival mid = Ival::from_bounds(lo, hi, work);
  mid.scale(mid_theta_coeff);
  mid.shift(mid_rational);
  detail::theta_power_bounds(theta.kind, n, work, lo, hi);
  mid.mul(Ival::from_bounds(lo, hi, work).recip_positive());
  return mid;
}

}  // namespace

const Rational& BasisSpec::q(std::size_t n) const {
  if (n >= q_.size()) {
    throw UnknownBasisIndex("no committed q_" + std::to_string(n));
  }
  return q_[n];
}

// Commits q_n for the next index n. The window midpoint is targeted with the
// coarsest dyadic rounding that lands in the middle half of the window, so
// committed values sit well inside and every later cmp_exact against the
// window bounds resolves at low precision. Deterministic by construction.
void BasisSpec::commit_index(std::size_t n) {
  const unsigned m = static_cast<unsigned>(n / 2);
  // Window bounds expressed as r + c * theta, c nonzero only for odd n.
  Rational mid_rational, mid_theta;
  std::vector<RawTerm> low_terms, high_terms;
  Rational low_offset, high_offset;
  if (n % 2 == 0) {
    // b_n in the middle half of (b_0, b_0 + eps'/m); b_0 = q_0 is rational.
    const Rational lo_bound = q_[0] + eps_prime_ / (4 * m);
    const Rational hi_bound = q_[0] + 3 * eps_prime_ / (4 * m);
    mid_rational = q_[0] + eps_prime_ / (2 * m);
    mid_theta = 0;
    low_offset = -lo_bound;
    high_offset = -hi_bound;
  } else {
    // b_n in the middle half of (b_1 - eps'/m, b_1); b_1 = q_1 * theta.
    mid_rational = -eps_prime_ / (2 * m);
    mid_theta = q_[1];
    low_terms.push_back({-q_[1], 1});
    high_terms.push_back({-q_[1], 1});
    low_offset = 3 * eps_prime_ / (4 * m);
    high_offset = eps_prime_ / (4 * m);
  }

  Rational previous_candidate;
  bool have_previous = false;
  for (unsigned k = 2;; ++k) {
    const mpfr_prec_t work = static_cast<mpfr_prec_t>(k) + 64;
    const Ival target =
        target_enclosure(mid_rational, mid_theta, static_cast<unsigned>(n),
                         theta_, work);
    const Rational scaled =
        (target.lo_rational() + target.hi_rational()) / 2 * pow2(k);
    const Rational candidate = Rational(round_nearest(scaled)) * pow2(-static_cast<long>(k));
    if (candidate == 0) continue;
    if (have_previous && candidate == previous_candidate) continue;
    previous_candidate = candidate;
    have_previous = true;

    std::vector<RawTerm> lo_check = low_terms;
    lo_check.push_back({candidate, static_cast<unsigned>(n)});
    std::vector<RawTerm> hi_check = high_terms;
    hi_check.push_back({candidate, static_cast<unsigned>(n)});
    if (raw_sign(lo_check, low_offset, theta_, precision_cap_) > 0 &&
        raw_sign(hi_check, high_offset, theta_, precision_cap_) < 0) {
      q_.push_back(candidate);
      break;
    }
    if (k > precision_cap_) {
      throw PrecisionExhausted("window rounding failed to converge");
    }
  }

  // Full-window recheck through the committed kernel path.
  const ExactPoint b_n = point_from(GroupElement::unit(static_cast<unsigned>(n)));
  ExactPoint win_lo, win_hi;
  if (n % 2 == 0) {
    win_lo = point_from(Rational(q_[0]));
    win_hi = point_from(Rational(q_[0] + eps_prime_ / m));
  } else {
    win_lo = ExactPoint{GroupElement::unit(1), -eps_prime_ / m};
    win_hi = point_from(GroupElement::unit(1));
  }
  if (cmp_exact(b_n, win_lo, *this) != std::strong_ordering::greater ||
      cmp_exact(b_n, win_hi, *this) != std::strong_ordering::less) {
    throw InvariantViolation("committed q_" + std::to_string(n) +
                             " violates its window");
  }
}

void BasisSpec::extend(std::size_t up_to_index) {
  while (q_.size() <= up_to_index) commit_index(q_.size());
}

BasisSpec BasisSpec::restore(Rational epsilon, Rational eps_prime,
                             ThetaDescriptor theta, std::vector<Rational> q,
                             unsigned precision_cap) {
  if (epsilon <= 0) throw InvalidEpsilon("epsilon must be positive");
  if (eps_prime <= 0) throw InvariantViolation("eps_prime must be positive");
  if (q.size() < 2) {
    throw InvariantViolation("a basis commits at least q_0 and q_1");
  }
  for (const Rational& value : q) {
    if (value == 0) throw InvariantViolation("committed q_n must be nonzero");
  }
  BasisSpec out;
  out.epsilon_ = std::move(epsilon);
  out.beta0_ = -2 * out.epsilon_;
  out.beta1_ = 2 * out.epsilon_;
  out.eps_prime_ = std::move(eps_prime);
  out.theta_ = theta;
  out.q_ = std::move(q);
  out.precision_cap_ = precision_cap;
  return out;
}

BasisSpec new_basis(const Rational& epsilon, const ThetaDescriptor& theta,
                    unsigned precision_cap) {
  if (epsilon <= 0) throw InvalidEpsilon("epsilon must be positive");
  BasisSpec basis;
  basis.epsilon_ = epsilon;
  basis.beta0_ = -2 * epsilon;
  basis.beta1_ = 2 * epsilon;
  basis.theta_ = theta;
  basis.precision_cap_ = precision_cap;

  // q_0 is the exact midpoint of (beta0, beta0 + eps).
  basis.q_.push_back(-3 * epsilon / 2);

  // q_1 * theta targets the midpoint of (beta1 - eps, beta1); accept the
  // coarsest dyadic landing in the middle half (5 eps/4, 7 eps/4).
  const Rational lo_bound = 5 * epsilon / 4;
  const Rational hi_bound = 7 * epsilon / 4;
  const Rational mid = 3 * epsilon / 2;
  Rational previous;
  bool have_previous = false;
  for (unsigned k = 2;; ++k) {
    const mpfr_prec_t work = static_cast<mpfr_prec_t>(k) + 64;
    const Ival target = target_enclosure(mid, 0, 1, theta, work);
    const Rational scaled =
        (target.lo_rational() + target.hi_rational()) / 2 * pow2(k);
    const Rational candidate = Rational(round_nearest(scaled)) * pow2(-static_cast<long>(k));
    if (candidate == 0) continue;
    if (have_previous && candidate == previous) continue;
    previous = candidate;
    have_previous = true;
    if (raw_sign({{candidate, 1}}, -lo_bound, theta, precision_cap) > 0 &&
        raw_sign({{candidate, 1}}, -hi_bound, theta, precision_cap) < 0) {
      basis.q_.push_back(candidate);
      break;
    }
    if (k > precision_cap) {
      throw PrecisionExhausted("q_1 rounding failed to converge");
    }
  }

  // eps' = half of min(beta0 + eps - b_0, b_1 - (beta1 - eps)). The second
  // slack is irrational; a certified dyadic lower bound stands in for it so
  // eps' stays rational. Both invariant chains keep strict margins.
  Rational slack_lower_bound;
  for (unsigned p = 64;; p *= 2) {
    Rational lo, hi;
    detail::theta_power_bounds(theta.kind, 1, p, lo, hi);
    Ival slack = Ival::from_bounds(lo, hi, p);
    slack.scale(basis.q_[1]);
    slack.shift(-epsilon);
    slack_lower_bound = slack.lo_rational();
    if (slack_lower_bound > 0) break;
    if (p > precision_cap) {
      throw PrecisionExhausted("eps_prime slack bound unresolved");
    }
  }
  const Rational quarter_eps = epsilon / 4;
  const Rational half_slack = slack_lower_bound / 2;
  basis.eps_prime_ = quarter_eps < half_slack ? quarter_eps : half_slack;
  return basis;
}

void extend_basis(BasisSpec& basis, std::size_t up_to_index) {
  basis.extend(up_to_index);
}

BasisReport verify_basis_properties(const BasisSpec& basis,
                                    std::size_t n_max) {
  BasisReport report;
  const auto fail = [&report](std::size_t index, const std::string& what) {
    report.pass = false;
    report.failure_index = index;
    report.failure = what;
  };
  const auto less = [&basis](const ExactPoint& a, const ExactPoint& b) {
    return cmp_exact(a, b, basis) == std::strong_ordering::less;
  };

  const ExactPoint beta0 = point_from(basis.beta0());
  const ExactPoint beta1 = point_from(basis.beta1());
  const ExactPoint b0 = point_from(GroupElement::unit(0));
  const ExactPoint b1 = point_from(GroupElement::unit(1));

  if (!less(beta0, b0) || !less(b0, point_from(basis.beta0() + basis.epsilon()))) {
    fail(0, "b_0 outside (beta0, beta0 + eps)");
    return report;
  }
  if (basis.has(1) &&
      (!less(point_from(basis.beta1() - basis.epsilon()), b1) ||
       !less(b1, beta1))) {
    fail(1, "b_1 outside (beta1 - eps, beta1)");
    return report;
  }

  const std::size_t limit = std::min(n_max, basis.committed() - 1);
  for (std::size_t n = 2; n <= limit; ++n) {
    const Rational m(static_cast<unsigned long>(n / 2));
    const ExactPoint b_n = point_from(GroupElement::unit(static_cast<unsigned>(n)));
    if (n % 2 == 0) {
      if (!less(b0, b_n)) {
        fail(n, "even b_n not above b_0");
        return report;
      }
      if (!less(b_n, point_from(basis.beta0() + basis.epsilon()))) {
        fail(n, "even b_n not below beta0 + eps");
        return report;
      }
      // Finite-scale convergence: b_n - b_0 < eps'/m.
      if (!less(b_n, point_add(b0, point_from(basis.eps_prime() / m)))) {
        fail(n, "even b_n misses its eps'/n window");
        return report;
      }
      // Two-cluster property at delta = eps'.
      if (!less(b_n, point_add(b0, point_from(basis.eps_prime())))) {
        fail(n, "even b_n outside [b_0, b_0 + eps')");
        return report;
      }
    } else {
      if (!less(b_n, b1)) {
        fail(n, "odd b_n not below b_1");
        return report;
      }
      if (!less(point_from(basis.beta1() - basis.epsilon()), b_n)) {
        fail(n, "odd b_n not above beta1 - eps");
        return report;
      }
      if (!less(point_sub(b1, point_from(basis.eps_prime() / m)), b_n)) {
        fail(n, "odd b_n misses its eps'/n window");
        return report;
      }
      if (!less(point_sub(b1, point_from(basis.eps_prime())), b_n)) {
        fail(n, "odd b_n outside (b_1 - eps', b_1]");
        return report;
      }
    }
  }
  return report;
}

}  // namespace steinhaus
