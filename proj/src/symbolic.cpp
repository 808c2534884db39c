#include "steinhaus/symbolic.hpp"

#include <utility>

#include "ival.hpp"
#include "steinhaus/errors.hpp"

namespace steinhaus {

GroupElement GroupElement::unit(unsigned n) { return single(n, 1); }

GroupElement GroupElement::single(unsigned n, Integer m) {
  GroupElement g;
  g.set_coeff(n, m);
  return g;
}

Integer GroupElement::coeff(unsigned n) const {
  const auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

unsigned GroupElement::max_index() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

Integer GroupElement::mass() const {
  Integer total = 0;
  for (const auto& [n, m] : coeffs_) total += abs(m);
  return total;
}

void GroupElement::set_coeff(unsigned n, const Integer& m) {
  if (m == 0) {
    coeffs_.erase(n);
  } else {
    coeffs_[n] = m;
  }
}

GroupElement GroupElement::operator+(const GroupElement& other) const {
  GroupElement out(*this);
  for (const auto& [n, m] : other.coeffs_) {
    out.set_coeff(n, out.coeff(n) + m);
  }
  return out;
}

GroupElement GroupElement::operator-() const {
  GroupElement out;
  for (const auto& [n, m] : coeffs_) out.coeffs_.emplace(n, -m);
  return out;
}

GroupElement GroupElement::operator-(const GroupElement& other) const {
  return *this + (-other);
}

bool operator<(const GroupElement& a, const GroupElement& b) {
  auto ia = a.coeffs_.begin();
  auto ib = b.coeffs_.begin();
  for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    const int c = cmp(ia->second, ib->second);
    if (c != 0) return c < 0;
  }
  return ia == a.coeffs_.end() && ib != b.coeffs_.end();
}

ExactPoint point_from(GroupElement g) { return ExactPoint{std::move(g), 0}; }

ExactPoint point_from(Rational r) {
  return ExactPoint{GroupElement{}, std::move(r)};
}

ExactPoint canonicalize(ExactPoint p, const BasisSpec& basis) {
  if (p.offset == 0) return p;
  const Rational multiple = p.offset / basis.q(0);
  if (is_integer(multiple)) {
    const Integer m(multiple.get_num());
    p.group_part.set_coeff(0, p.group_part.coeff(0) + m);
    p.offset = 0;
  }
  return p;
}

bool in_group(const ExactPoint& p, const BasisSpec& basis) {
  return canonicalize(p, basis).offset == 0;
}

ExactPoint point_add(const ExactPoint& a, const ExactPoint& b) {
  return ExactPoint{a.group_part + b.group_part, a.offset + b.offset};
}

ExactPoint point_sub(const ExactPoint& a, const ExactPoint& b) {
  return ExactPoint{a.group_part - b.group_part, a.offset - b.offset};
}

ExactPoint point_neg(const ExactPoint& a) {
  return ExactPoint{-a.group_part, -a.offset};
}

namespace detail {

KernelStats& kernel_stats() {
  thread_local KernelStats stats;
  return stats;
}

void reset_kernel_stats() { kernel_stats() = KernelStats{}; }

namespace {

// One interval evaluation of sum m_n q_n theta^n + offset at a fixed working
// precision. Soundness does not depend on the precision choice; callers
// refine until their own criterion holds.
Ival evaluate_once(const std::map<unsigned, Integer>& coeffs,
                   const Rational& offset, const BasisSpec& basis,
                   mpfr_prec_t work) {
  ++kernel_stats().refinements;
  Ival acc = Ival::from_rational(offset, work);
  for (const auto& [n, m] : coeffs) {
    if (!basis.has(n)) {
      throw UnknownBasisIndex("no committed q_" + std::to_string(n));
    }
    Rational lo, hi;
    theta_power_bounds(basis.theta().kind, n, work, lo, hi);
    Ival term = Ival::from_bounds(lo, hi, work);
    term.scale(Rational(m) * basis.q(n));
    acc.add(term);
  }
  return acc;
}

bool support_in_zero(const std::map<unsigned, Integer>& coeffs) {
  return coeffs.empty() ||
         (coeffs.size() == 1 && coeffs.begin()->first == 0);
}

Rational rational_value_at_zero(const std::map<unsigned, Integer>& coeffs,
                                const Rational& offset,
                                const BasisSpec& basis) {
  Rational value = offset;
  if (!coeffs.empty()) {
    if (!basis.has(0)) throw UnknownBasisIndex("no committed q_0");
    value += Rational(coeffs.begin()->second) * basis.q(0);
  }
  return value;
}

}  // namespace
}  // namespace detail

RealEnclosure eval_enclosure(const std::map<unsigned, Integer>& coeffs,
                             const BasisSpec& basis, unsigned precision_bits) {
  GroupElement g;
  for (const auto& [n, m] : coeffs) g.set_coeff(n, m);
  return eval_point(point_from(std::move(g)), basis, precision_bits);
}

RealEnclosure eval_point(const ExactPoint& p, const BasisSpec& basis,
                         unsigned precision_bits) {
  const auto& coeffs = p.group_part.coeffs();
  if (detail::support_in_zero(coeffs)) {
    const Rational v = detail::rational_value_at_zero(coeffs, p.offset, basis);
    return RealEnclosure{v, v, precision_bits};
  }
  mpfr_prec_t work = static_cast<mpfr_prec_t>(precision_bits) + 64;
  while (true) {
    const detail::Ival tight =
        detail::evaluate_once(coeffs, p.offset, basis, work);
    const Rational lo = tight.lo_rational();
    const Rational hi = tight.hi_rational();
    // Width budget 2^(1-p) * max(1, |lo|). The result is padded to an eighth
    // of the budget per side, which keeps enclosures at precision 4p nested
    // strictly inside enclosures at precision p.
    Rational scale = abs(lo);
    if (scale < 1) scale = 1;
    Rational budget = 2 * scale;
    mpq_div_2exp(budget.get_mpq_t(), budget.get_mpq_t(), precision_bits);
    const Rational pad = budget / 8;
    if (hi - lo <= pad) {
      return RealEnclosure{lo - pad, hi + pad, precision_bits};
    }
    work *= 2;
  }
}

std::strong_ordering cmp_exact(const ExactPoint& x, const ExactPoint& y,
                               const BasisSpec& basis) {
  ++detail::kernel_stats().comparisons;
  const GroupElement diff = x.group_part - y.group_part;
  const Rational offset = x.offset - y.offset;
  const auto& coeffs = diff.coeffs();
  if (detail::support_in_zero(coeffs)) {
    const Rational v = detail::rational_value_at_zero(coeffs, offset, basis);
    const int s = sgn(v);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  // Always probe once; the cap limits further refinement.
  const unsigned cap = basis.precision_cap();
  for (unsigned p = 64;; p *= 2) {
    const detail::Ival e = detail::evaluate_once(
        coeffs, offset, basis, static_cast<mpfr_prec_t>(p));
    const int s = e.sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    if (p >= cap) break;
  }
  throw PrecisionExhausted(
      "sign of a nonzero symbolic combination unresolved at the precision "
      "cap (" +
      std::to_string(cap) + " bits)");
}

std::strong_ordering cmp_exact(const GroupElement& x, const GroupElement& y,
                               const BasisSpec& basis) {
  return cmp_exact(point_from(x), point_from(y), basis);
}

}  // namespace steinhaus
