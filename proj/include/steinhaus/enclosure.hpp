#pragma once

#include "steinhaus/rational.hpp"

namespace steinhaus {

enum class ThetaKind { E };

// Tag for the transcendental seed theta. Only e ships; the tag keeps the
// kernel extensible to other numbers with certified enclosures.
struct ThetaDescriptor {
  ThetaKind kind = ThetaKind::E;

  friend bool operator==(const ThetaDescriptor&, const ThetaDescriptor&) =
      default;
};

// Certified interval [lo, hi] containing a real value at a stated precision:
// hi - lo <= 2^(1 - precision_bits) * max(1, |lo|).
//
// Endpoints are exact rationals. Every refinement path produces dyadic
// endpoints (integer * 2^k); exact rational inputs produce point intervals,
// which is why the endpoint type is not restricted to dyadics.
struct RealEnclosure {
  Rational lo;
  Rational hi;
  unsigned precision_bits = 0;

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains(const RealEnclosure& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
  }
  Rational midpoint() const { return (lo + hi) / 2; }
};

// Enclosure of theta from partial sums of sum 1/k! with tail bound 2/(K+1)!.
RealEnclosure theta_enclosure(const ThetaDescriptor& theta,
                              unsigned precision_bits);

// Enclosure of theta^n; n = 0 yields the exact point [1, 1].
RealEnclosure power_enclosure(const ThetaDescriptor& theta, unsigned n,
                              unsigned precision_bits);

}  // namespace steinhaus
