#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "steinhaus/enclosure.hpp"
#include "steinhaus/rational.hpp"

namespace steinhaus {

inline constexpr unsigned kDefaultPrecisionCap = 65536;

// Frozen construction data for the set B. epsilon fixes the window bounds
// beta0 = -2*eps and beta1 = 2*eps; q holds the committed nonzero rationals
// with b_n = q_n * theta^n. The q sequence is append-only: committed entries
// never change, so two builds with the same (epsilon, theta) agree on every
// shared prefix.
//
// Extension mutates; it must be externally serialized (single writer).
// Reads of committed prefixes are safe from any number of readers.
class BasisSpec {
 public:
  const Rational& epsilon() const { return epsilon_; }
  const Rational& beta0() const { return beta0_; }
  const Rational& beta1() const { return beta1_; }
  const Rational& eps_prime() const { return eps_prime_; }
  const ThetaDescriptor& theta() const { return theta_; }

  unsigned precision_cap() const { return precision_cap_; }
  void set_precision_cap(unsigned bits) { precision_cap_ = bits; }

  std::size_t committed() const { return q_.size(); }
  bool has(std::size_t n) const { return n < q_.size(); }
  // Throws UnknownBasisIndex when q_n has not been committed.
  const Rational& q(std::size_t n) const;
  const std::vector<Rational>& q_sequence() const { return q_; }

  // Commits q_m for all m <= up_to_index. No-op when already committed.
  void extend(std::size_t up_to_index);

  // Rebuilds a spec from serialized fields without re-running the builder.
  // Windows are not re-verified here; verify_basis_properties does that.
  static BasisSpec restore(Rational epsilon, Rational eps_prime,
                           ThetaDescriptor theta, std::vector<Rational> q,
                           unsigned precision_cap = kDefaultPrecisionCap);

 private:
  friend BasisSpec new_basis(const Rational&, const ThetaDescriptor&,
                             unsigned);
  BasisSpec() = default;
  void commit_index(std::size_t n);

  Rational epsilon_;
  Rational beta0_;
  Rational beta1_;
  Rational eps_prime_;
  ThetaDescriptor theta_;
  std::vector<Rational> q_;
  unsigned precision_cap_ = kDefaultPrecisionCap;
};

// Builds a basis and commits q_0 and q_1:
//   q_0 = -3*eps/2, the midpoint of (beta0, beta0 + eps) since theta^0 = 1;
//   q_1 = the coarsest dyadic rounding of (3*eps/2)/theta whose b_1 lands in
//         the middle half of (beta1 - eps, beta1), verified by cmp_exact;
//   eps_prime = half of min(beta0 + eps - b_0, rlb(b_1 - (beta1 - eps)))
//         where rlb is a certified rational lower bound (b_1 is irrational,
//         eps_prime must be rational).
// Throws InvalidEpsilon when epsilon <= 0.
BasisSpec new_basis(const Rational& epsilon, const ThetaDescriptor& theta = {},
                    unsigned precision_cap = kDefaultPrecisionCap);

// Commits q_m for all m <= up_to_index using the same midpoint rule:
// even 2n land in the middle half of (b_0, b_0 + eps'/n), odd 2n+1 in the
// middle half of (b_1 - eps'/n, b_1). Deterministic.
void extend_basis(BasisSpec& basis, std::size_t up_to_index);

struct BasisReport {
  bool pass = true;
  std::size_t failure_index = 0;
  std::string failure;  // empty when pass
};

// Checks, for all committed n <= n_max: the ordering chains of the window
// property, the finite-scale convergence bounds |b_2n - b_0| < eps'/n and
// |b_2n+1 - b_1| < eps'/n, and the two-cluster property at delta = eps'.
BasisReport verify_basis_properties(const BasisSpec& basis, std::size_t n_max);

}  // namespace steinhaus
