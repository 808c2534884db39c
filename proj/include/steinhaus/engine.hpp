#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "steinhaus/group.hpp"

namespace steinhaus {

// Enumeration of C = J intersect G. The endpoint cases come first: x_0 = c_0
// when c_0 is in C, then x_1 = c_1 when c_1 is as well (c_1 alone becomes
// x_0). The rest of C follows in increasing height W * max_index + mass with
// lexicographic tie-break on the coefficient tuple; membership of every
// candidate is decided exactly. Lazily extends both itself and the basis.
class CEnumeration {
 public:
  static constexpr unsigned kIndexWeight = 64;

  CEnumeration(RealInterval interval, BasisSpec& basis);

  // The i-th element of C; extends the enumeration as needed.
  const GroupElement& at(std::size_t i);
  std::size_t emitted_count() const { return emitted_.size(); }
  const std::vector<GroupElement>& emitted() const { return emitted_; }
  const RealInterval& interval() const { return interval_; }

  // How many leading elements came from the endpoint initial conditions.
  std::size_t endpoint_count() const { return endpoint_count_; }

 private:
  void advance_level();

  RealInterval interval_;
  BasisSpec* basis_;
  std::vector<GroupElement> emitted_;
  std::set<GroupElement> seen_;
  std::size_t endpoint_count_ = 0;
  unsigned long level_ = 0;
};

CEnumeration enumerate_C(const RealInterval& interval, BasisSpec& basis,
                         std::size_t count);

struct StepStats {
  std::size_t covered_index = 0;      // the l of the step's x_l
  unsigned candidates_scanned = 0;    // qualified candidates, accepted one included
  std::size_t translates_before = 0;  // k when the step ran
};

// Result of a run: the translate offsets a_0, a_1, ... with the basis they
// live over. coverage_log pairs each translate with the enumeration index it
// was introduced to cover. stats carry per-step diagnostics and are not part
// of the serialized form.
struct Decomposition {
  RealInterval interval;
  Rational epsilon;
  BasisSpec basis;
  std::vector<Translate> translates;
  std::vector<std::pair<std::size_t, std::size_t>> coverage_log;
  std::vector<StepStats> stats;
};

// The translates (c_0 - b_0) + B and/or (c_1 - b_1) + B for endpoints lying
// in C. Requires 8 eps < length(J); the 8 eps argument guarantees the two
// seeds are disjoint and inside J, which is asserted.
std::vector<Translate> endpoint_translates(const RealInterval& interval,
                                           BasisSpec& basis);

struct CoveringResult {
  Translate translate;
  unsigned candidates_scanned = 0;
};

// Finds a covering translate for x: scans basis indices j = 0, 1, ... (extending the
// basis lazily); j qualifies when b_j lies in the open interval
// J'' = (x - c_1 + b_1, x - c_0 + b_0); a qualified candidate a = x - b_j is
// accepted when a + B lies in the open interior and is disjoint from every
// existing translate. At most 2k of the qualified candidates can fail, so
// at most 2k+1 are ever scanned; exceeding that throws
// CandidateBoundExceeded (a soundness bug, not an input condition).
CoveringResult find_covering_translate(const GroupElement& x,
                                       std::span<const Translate> existing,
                                       const RealInterval& interval,
                                       BasisSpec& basis);

// Runs the inductive construction: seeds with endpoint_translates, then
// `steps` times covers the smallest uncovered x_l with a fresh disjoint
// translate. Throws IntervalTooShort unless 8 eps < length(J).
Decomposition decompose(const RealInterval& interval, const Rational& epsilon,
                        unsigned steps, const BasisSpec& basis);

struct VerifyReport {
  bool pass = true;
  std::string witness;  // first counterexample, empty when pass

  explicit operator bool() const { return pass; }
};

// Three exact checks: (a) pairwise disjointness of all translates (plus the
// subset invariant translate_in_interval), (b) each of the first n_points
// elements of C covered exactly once, (c) no collision among the sums
// a_j + b_p over p <= n_basis.
VerifyReport verify_decomposition(const Decomposition& decomposition,
                                  std::size_t n_points, std::size_t n_basis);

// Constructive witness that no finite union of pairwise disjoint
// translates of B contains C. Sorts the 2k translate endpoints,
// takes delta below a third of the smallest gap, locates a strip-free
// subinterval J* of length >= delta, and returns a point of J* cap G outside
// every translate.
GroupElement find_uncovered_point(std::span<const Translate> existing,
                                  const RealInterval& interval,
                                  BasisSpec& basis);

}  // namespace steinhaus
