#pragma once

#include <functional>
#include <optional>

#include "steinhaus/symbolic.hpp"

namespace steinhaus {

// Nonempty, nondegenerate interval with exact endpoints and open/closed
// flags. Build through make_interval, which checks lo < hi.
struct RealInterval {
  ExactPoint lo;
  ExactPoint hi;
  bool lo_closed = false;
  bool hi_closed = false;
};

RealInterval make_interval(ExactPoint lo, ExactPoint hi, bool lo_closed,
                           bool hi_closed, const BasisSpec& basis);

// The open interior (c_0, c_1) of J.
RealInterval interior(const RealInterval& interval);

// Exact length hi - lo as a symbolic point.
ExactPoint interval_length(const RealInterval& interval);

// The set offset + B. Offsets arise as x - b_j with x in G, so they are
// group elements by construction.
struct Translate {
  GroupElement offset;

  friend bool operator==(const Translate&, const Translate&) = default;
};

// True iff x - offset is a unit vector e_j: membership is a pure coefficient
// pattern, no numerics involved.
bool translate_contains(const Translate& t, const GroupElement& x);

// True iff (t.offset + B) and (u.offset + B) are disjoint. They intersect
// exactly when d = t.offset - u.offset is zero or of the form e_q - e_p with
// p != q; Q-independence of B makes this purely symbolic.
bool translates_disjoint(const Translate& t, const Translate& u);

bool point_in_interval(const ExactPoint& x, const RealInterval& interval,
                       const BasisSpec& basis);
bool point_in_interval(const GroupElement& x, const RealInterval& interval,
                       const BasisSpec& basis);

// True iff offset + b_0 and offset + b_1 both lie in the interval. Since
// b_0 = min(B) and b_1 = max(B) belong to B, this is equivalent to
// offset + B being a subset of the interval.
bool translate_in_interval(const Translate& t, const RealInterval& interval,
                           const BasisSpec& basis);

// m * e_0 when r = m * q_0 for an integer m; the only rational elements of G
// are the integer multiples of q_0.
std::optional<GroupElement> rational_in_G(const Rational& r,
                                          const BasisSpec& basis);

// Finds an element n_0 e_0 + n_1 e_1 of G inside the interval: plain scan in
// increasing height |n_0| + |n_1| with lexicographic (n_0, n_1) tie-break,
// switching to continued-fraction convergents of b_1/|b_0| when the plain
// scan stalls. `reject` filters candidates (used to avoid finitely many
// covered points); a rejected candidate is skipped, never returned.
// Throws HeightCapExceeded when no candidate within the cap is found.
GroupElement find_group_element_in(
    const RealInterval& interval, const BasisSpec& basis,
    const Integer& height_cap,
    const std::function<bool(const GroupElement&)>& reject = {});

inline const Integer kDefaultHeightCap = Integer(1) << 62;

}  // namespace steinhaus
