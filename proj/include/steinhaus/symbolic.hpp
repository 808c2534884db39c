#pragma once

#include <compare>
#include <cstddef>
#include <map>

#include "steinhaus/basis.hpp"
#include "steinhaus/enclosure.hpp"
#include "steinhaus/rational.hpp"

namespace steinhaus {

// Element of the group G as a sparse integer vector over basis indices:
// value = sum over support of m_n * q_n * theta^n. Canonical form stores no
// zero coefficients, so map equality is element equality (Q-independence of
// B makes symbolic equality the only equality).
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement unit(unsigned n);  // e_n, with value b_n
  static GroupElement single(unsigned n, Integer m);

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<unsigned, Integer>& coeffs() const { return coeffs_; }
  Integer coeff(unsigned n) const;
  std::size_t support_size() const { return coeffs_.size(); }
  unsigned max_index() const;  // 0 for the zero element
  Integer mass() const;        // sum of |m_n|

  void set_coeff(unsigned n, const Integer& m);  // erases zeros

  GroupElement operator+(const GroupElement& other) const;
  GroupElement operator-() const;
  GroupElement operator-(const GroupElement& other) const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  // Lexicographic on the (index, coefficient) sequence; a total order for
  // containers and deterministic tie-breaks, unrelated to real value.
  friend bool operator<(const GroupElement& a, const GroupElement& b);

 private:
  std::map<unsigned, Integer> coeffs_;
};

// A point on the line: group element plus a rational offset. This is the
// symbolic value type of the kernel; interval endpoints that are plain
// rationals share one code path with group elements.
//
// Equality is structural. The same real value can have two representations
// when the offset is a multiple of q_0; canonicalize() merges such offsets
// into coefficient 0 so membership in G becomes syntactically visible.
struct ExactPoint {
  GroupElement group_part;
  Rational offset = 0;

  friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
};

ExactPoint point_from(GroupElement g);
ExactPoint point_from(Rational r);

ExactPoint canonicalize(ExactPoint p, const BasisSpec& basis);
bool in_group(const ExactPoint& p, const BasisSpec& basis);

ExactPoint point_add(const ExactPoint& a, const ExactPoint& b);
ExactPoint point_sub(const ExactPoint& a, const ExactPoint& b);
ExactPoint point_neg(const ExactPoint& a);

// Enclosure of sum m_n q_n theta^n. Exact point interval when the support is
// contained in {0}; otherwise dyadic endpoints meeting the width bound, and
// enclosures at higher precision nest inside enclosures at lower precision.
// Throws UnknownBasisIndex for coefficients without a committed q_n.
RealEnclosure eval_enclosure(const std::map<unsigned, Integer>& coeffs,
                             const BasisSpec& basis, unsigned precision_bits);

// Same, for a full symbolic point (group part plus rational offset).
RealEnclosure eval_point(const ExactPoint& p, const BasisSpec& basis,
                         unsigned precision_bits);

// Total order on symbolic values. Equal iff the difference is identically
// zero; otherwise refines enclosures by doubling precision until the sign is
// certain. Values supported on index 0 only compare by exact rational
// arithmetic. Throws PrecisionExhausted at the basis precision cap; never
// reports Equal for values it could not prove equal symbolically.
std::strong_ordering cmp_exact(const ExactPoint& x, const ExactPoint& y,
                               const BasisSpec& basis);
std::strong_ordering cmp_exact(const GroupElement& x, const GroupElement& y,
                               const BasisSpec& basis);

namespace detail {

// Counters for tests that assert refinement-free fast paths.
struct KernelStats {
  unsigned long long comparisons = 0;
  unsigned long long refinements = 0;  // numeric enclosure evaluations
};

KernelStats& kernel_stats();
void reset_kernel_stats();

}  // namespace detail

}  // namespace steinhaus
