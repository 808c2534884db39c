#include "steinhaus/engine.hpp"

#include <algorithm>
#include <map>

#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

// All coefficient tuples (m_0, ..., m_max_index) with given total mass and
// m_max_index != 0, in ascending lexicographic order.
void generate_tuples(unsigned position, unsigned max_index, long remaining,
                     std::vector<long>& current,
                     std::vector<GroupElement>& out) {
  if (position == max_index) {
    if (remaining == 0) return;
    for (const long last : {-remaining, remaining}) {
      GroupElement g;
      for (unsigned i = 0; i < max_index; ++i) g.set_coeff(i, current[i]);
      g.set_coeff(max_index, last);
      out.push_back(std::move(g));
    }
    return;
  }
  for (long m = -remaining; m <= remaining; ++m) {
    current[position] = m;
    generate_tuples(position + 1, max_index, remaining - std::abs(m), current,
                    out);
  }
  current[position] = 0;
}

void check_seed_length(const RealInterval& interval, const BasisSpec& basis) {
  const ExactPoint bound = point_from(Rational(8 * basis.epsilon()));
  if (cmp_exact(bound, interval_length(interval), basis) !=
      std::strong_ordering::less) {
    throw IntervalTooShort("decomposition requires 8*epsilon < length(J)");
  }
}

}  // namespace

CEnumeration::CEnumeration(RealInterval interval, BasisSpec& basis)
    : interval_(std::move(interval)), basis_(&basis) {
  const ExactPoint lo = canonicalize(interval_.lo, *basis_);
  const ExactPoint hi = canonicalize(interval_.hi, *basis_);
  const bool lo_in_C = interval_.lo_closed && lo.offset == 0;
  const bool hi_in_C = interval_.hi_closed && hi.offset == 0;
  if (lo_in_C) {
    emitted_.push_back(lo.group_part);
    seen_.insert(lo.group_part);
  }
  if (hi_in_C) {
    emitted_.push_back(hi.group_part);
    seen_.insert(hi.group_part);
  }
  endpoint_count_ = emitted_.size();
}

const GroupElement& CEnumeration::at(std::size_t i) {
  while (emitted_.size() <= i) advance_level();
  return emitted_[i];
}

void CEnumeration::advance_level() {
  // Guard against a logic error leaving the scan yield-free forever; the
  // group is dense, so real runs yield on a steady cadence.
  constexpr unsigned long kLevelGuard = 1u << 20;
  const std::size_t before = emitted_.size();
  while (emitted_.size() == before) {
    std::vector<GroupElement> level_elements;
    for (unsigned max_index = 0; max_index * kIndexWeight <= level_;
         ++max_index) {
      const long mass = static_cast<long>(level_ - max_index * kIndexWeight);
      if (max_index == 0) {
        if (mass == 0) {
          level_elements.emplace_back();
        } else {
          level_elements.push_back(GroupElement::single(0, -mass));
          level_elements.push_back(GroupElement::single(0, mass));
        }
        continue;
      }
      basis_->extend(max_index);
      std::vector<long> current(max_index, 0);
      generate_tuples(0, max_index, mass, current, level_elements);
    }
    for (GroupElement& candidate : level_elements) {
      if (seen_.contains(candidate)) continue;
      if (!point_in_interval(candidate, interval_, *basis_)) continue;
      seen_.insert(candidate);
      emitted_.push_back(std::move(candidate));
    }
    if (++level_ > kLevelGuard) {
      throw InvariantViolation("enumeration scan failed to make progress");
    }
  }
}

CEnumeration enumerate_C(const RealInterval& interval, BasisSpec& basis,
                         std::size_t count) {
  CEnumeration enumeration(interval, basis);
  if (count > 0) enumeration.at(count - 1);
  return enumeration;
}

std::vector<Translate> endpoint_translates(const RealInterval& interval,
                                           BasisSpec& basis) {
  check_seed_length(interval, basis);
  std::vector<Translate> out;
  const ExactPoint lo = canonicalize(interval.lo, basis);
  if (interval.lo_closed && lo.offset == 0) {
    out.push_back(Translate{lo.group_part - GroupElement::unit(0)});
  }
  const ExactPoint hi = canonicalize(interval.hi, basis);
  if (interval.hi_closed && hi.offset == 0) {
    out.push_back(Translate{hi.group_part - GroupElement::unit(1)});
  }
  for (const Translate& t : out) {
    if (!translate_in_interval(t, interval, basis)) {
      throw InvariantViolation("endpoint translate leaves the interval");
    }
  }
  if (out.size() == 2 && !translates_disjoint(out[0], out[1])) {
    throw InvariantViolation("endpoint translates intersect");
  }
  return out;
}

CoveringResult find_covering_translate(const GroupElement& x,
                                       std::span<const Translate> existing,
                                       const RealInterval& interval,
                                       BasisSpec& basis) {
  const RealInterval inner = interior(interval);
  basis.extend(x.max_index());
  if (!point_in_interval(x, inner, basis)) {
    throw InvariantViolation("x must lie in the open interior of J");
  }
  for (const Translate& t : existing) {
    if (translate_contains(t, x)) {
      throw InvariantViolation("x is already covered");
    }
  }

  // J'' = (x - c_1 + b_1, x - c_0 + b_0): b_j inside it exactly when
  // (x - b_j) + B fits in the open interior.
  const ExactPoint lower =
      point_sub(point_from(x + GroupElement::unit(1)), interval.hi);
  const ExactPoint upper =
      point_sub(point_from(x + GroupElement::unit(0)), interval.lo);

  const unsigned bound = 2 * static_cast<unsigned>(existing.size()) + 1;
  const unsigned scan_guard = 65536 + 64 * bound;
  unsigned scanned = 0;
  for (unsigned j = 0;; ++j) {
    basis.extend(j);
    const ExactPoint b_j = point_from(GroupElement::unit(j));
    if (cmp_exact(b_j, lower, basis) != std::strong_ordering::greater ||
        cmp_exact(b_j, upper, basis) != std::strong_ordering::less) {
      if (j > scan_guard) {
        throw InvariantViolation("qualified-candidate scan stalled");
      }
      continue;
    }
    ++scanned;
    const Translate candidate{x - GroupElement::unit(j)};
    bool accepted = translate_in_interval(candidate, inner, basis);
    if (accepted) {
      for (const Translate& t : existing) {
        if (!translates_disjoint(candidate, t)) {
          accepted = false;
          break;
        }
      }
    }
    if (accepted) return CoveringResult{candidate, scanned};
    if (scanned >= bound) {
      throw CandidateBoundExceeded(
          "more than 2k+1 qualified candidates failed");
    }
  }
}

Decomposition decompose(const RealInterval& interval, const Rational& epsilon,
                        unsigned steps, const BasisSpec& basis) {
  if (epsilon != basis.epsilon()) {
    throw InvariantViolation("epsilon does not match the basis");
  }
  Decomposition result{interval, epsilon, basis, {}, {}, {}};
  check_seed_length(interval, result.basis);

  CEnumeration enumeration(interval, result.basis);
  std::vector<char> covered;

  const auto refresh_covered = [&](std::size_t upto) {
    while (covered.size() < upto) {
      const GroupElement& x = enumeration.at(covered.size());
      bool is_covered = false;
      for (const Translate& t : result.translates) {
        if (translate_contains(t, x)) {
          is_covered = true;
          break;
        }
      }
      covered.push_back(is_covered ? 1 : 0);
    }
  };
  const auto mark_translate = [&](const Translate& t) {
    for (std::size_t i = 0; i < covered.size(); ++i) {
      if (!covered[i] && translate_contains(t, enumeration.at(i))) {
        covered[i] = 1;
      }
    }
  };

  for (const Translate& seed : endpoint_translates(interval, result.basis)) {
    refresh_covered(enumeration.endpoint_count());
    std::size_t covers = 0;
    while (covers < enumeration.emitted_count() &&
           !translate_contains(seed, enumeration.at(covers))) {
      ++covers;
    }
    result.translates.push_back(seed);
    result.coverage_log.emplace_back(result.translates.size() - 1, covers);
    mark_translate(seed);
  }

  for (unsigned step = 0; step < steps; ++step) {
    std::size_t l = 0;
    for (;; ++l) {
      refresh_covered(l + 1);
      if (!covered[l]) break;
    }
    const std::size_t k_before = result.translates.size();
    CoveringResult found = find_covering_translate(
        enumeration.at(l), result.translates, interval, result.basis);
    result.translates.push_back(found.translate);
    result.coverage_log.emplace_back(result.translates.size() - 1, l);
    result.stats.push_back(StepStats{l, found.candidates_scanned, k_before});
    mark_translate(found.translate);
  }
  return result;
}

VerifyReport verify_decomposition(const Decomposition& decomposition,
                                  std::size_t n_points, std::size_t n_basis) {
  VerifyReport report;
  const auto fail = [&report](std::string witness) {
    report.pass = false;
    report.witness = std::move(witness);
  };
  BasisSpec basis = decomposition.basis;
  const auto& translates = decomposition.translates;

  // (a) pairwise disjointness, plus the subset invariant.
  for (std::size_t i = 0; i < translates.size(); ++i) {
    if (!translate_in_interval(translates[i], decomposition.interval, basis)) {
      fail("translate " + std::to_string(i) + " leaves the interval");
      return report;
    }
    for (std::size_t j = i + 1; j < translates.size(); ++j) {
      if (!translates_disjoint(translates[i], translates[j])) {
        fail("translates " + std::to_string(i) + " and " + std::to_string(j) +
             " intersect");
        return report;
      }
    }
  }

  // (b) each of the first n_points elements of C covered exactly once.
  CEnumeration enumeration(decomposition.interval, basis);
  for (std::size_t i = 0; i < n_points; ++i) {
    const GroupElement& x = enumeration.at(i);
    std::size_t count = 0;
    for (const Translate& t : translates) {
      if (translate_contains(t, x)) ++count;
    }
    if (count != 1) {
      fail("x_" + std::to_string(i) + " covered " + std::to_string(count) +
           " times");
      return report;
    }
  }

  // (c) uniqueness: the sums a_j + b_p over p <= n_basis are all distinct.
  basis.extend(n_basis);
  std::map<GroupElement, std::pair<std::size_t, std::size_t>> sums;
  for (std::size_t j = 0; j < translates.size(); ++j) {
    for (std::size_t p = 0; p <= n_basis; ++p) {
      GroupElement sum =
          translates[j].offset + GroupElement::unit(static_cast<unsigned>(p));
      const auto [it, inserted] =
          sums.emplace(std::move(sum), std::make_pair(j, p));
      if (!inserted) {
        fail("a_" + std::to_string(j) + " + b_" + std::to_string(p) +
             " collides with a_" + std::to_string(it->second.first) + " + b_" +
             std::to_string(it->second.second));
        return report;
      }
    }
  }
  return report;
}

GroupElement find_uncovered_point(std::span<const Translate> existing,
                                  const RealInterval& interval,
                                  BasisSpec& basis) {
  for (std::size_t i = 0; i < existing.size(); ++i) {
    for (std::size_t j = i + 1; j < existing.size(); ++j) {
      if (!translates_disjoint(existing[i], existing[j])) {
        throw InvariantViolation("existing translates must be disjoint");
      }
    }
  }
  check_seed_length(interval, basis);

  const auto rejected = [&](const GroupElement& g) {
    for (const Translate& t : existing) {
      if (translate_contains(t, g)) return true;
    }
    return false;
  };

  GroupElement witness;
  if (existing.empty()) {
    witness = find_group_element_in(interval, basis, kDefaultHeightCap);
  } else {
    // The 2k translate endpoints a_i + b_0, a_i + b_1, sorted by value.
    std::vector<ExactPoint> endpoints;
    endpoints.reserve(2 * existing.size());
    for (const Translate& t : existing) {
      endpoints.push_back(point_from(t.offset + GroupElement::unit(0)));
      endpoints.push_back(point_from(t.offset + GroupElement::unit(1)));
    }
    std::sort(endpoints.begin(), endpoints.end(),
              [&basis](const ExactPoint& a, const ExactPoint& b) {
                return cmp_exact(a, b, basis) == std::strong_ordering::less;
              });

    // Certified rational lower bound on the smallest adjacent gap; delta is
    // a quarter of it, which keeps 3 * delta strictly below every gap.
    Rational gap_bound;
    bool have_bound = false;
    for (std::size_t i = 0; i + 1 < endpoints.size(); ++i) {
      const ExactPoint diff = point_sub(endpoints[i + 1], endpoints[i]);
      if (cmp_exact(diff, point_from(Rational(0)), basis) !=
          std::strong_ordering::greater) {
        throw InvariantViolation("translate endpoints are not distinct");
      }
      Rational lower;
      for (unsigned p = 128;; p *= 2) {
        lower = eval_point(diff, basis, p).lo;
        if (lower > 0) break;
        if (p > basis.precision_cap()) {
          throw PrecisionExhausted("endpoint gap bound unresolved");
        }
      }
      if (!have_bound || lower < gap_bound) {
        gap_bound = lower;
        have_bound = true;
      }
    }
    const Rational delta = gap_bound / 4;
    const ExactPoint delta_pt = point_from(delta);

    // Candidate strip-free gaps, scanned left to right and intersected with
    // J; each strip around an endpoint value v is contained in
    // (v - delta, v + delta). Translates may sit anywhere on the line,
    // so clipping to J is part of admissibility.
    std::optional<RealInterval> gap;
    const auto admit = [&](ExactPoint lo, bool lo_closed, ExactPoint hi,
                           bool hi_closed) {
      if (gap) return;
      const auto lo_cmp = cmp_exact(lo, interval.lo, basis);
      if (lo_cmp == std::strong_ordering::less) {
        lo = interval.lo;
        lo_closed = interval.lo_closed;
      } else if (lo_cmp == std::strong_ordering::equal) {
        lo_closed = lo_closed && interval.lo_closed;
      }
      const auto hi_cmp = cmp_exact(hi, interval.hi, basis);
      if (hi_cmp == std::strong_ordering::greater) {
        hi = interval.hi;
        hi_closed = interval.hi_closed;
      } else if (hi_cmp == std::strong_ordering::equal) {
        hi_closed = hi_closed && interval.hi_closed;
      }
      if (cmp_exact(lo, hi, basis) != std::strong_ordering::less) return;
      const ExactPoint len = point_sub(hi, lo);
      if (cmp_exact(len, delta_pt, basis) == std::strong_ordering::less) {
        return;
      }
      gap = RealInterval{std::move(lo), std::move(hi), lo_closed, hi_closed};
    };
    admit(interval.lo, interval.lo_closed,
          point_sub(endpoints.front(), delta_pt), true);
    for (std::size_t i = 0; !gap && i + 1 < endpoints.size(); ++i) {
      admit(point_add(endpoints[i], delta_pt), true,
            point_sub(endpoints[i + 1], delta_pt), true);
    }
    admit(point_add(endpoints.back(), delta_pt), true, interval.hi,
          interval.hi_closed);
    if (!gap) {
      throw InvariantViolation("no strip-free subinterval found");
    }
    witness = find_group_element_in(*gap, basis, kDefaultHeightCap, rejected);
  }

  if (!point_in_interval(witness, interval, basis) || rejected(witness)) {
    throw InvariantViolation("witness outside C or already covered");
  }
  return witness;
}

}  // namespace steinhaus
