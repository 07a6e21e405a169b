#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace eon {

/// Index of a frequency slot unit, zero-based.
using Unit = std::int32_t;

class SpectrumError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Contiguous units: the inclusive interval [lo, hi].
struct CU {
  Unit lo = 0;
  Unit hi = 0;

  constexpr Unit width() const noexcept { return hi - lo + 1; }
  constexpr bool contains(Unit u) const noexcept { return lo <= u && u <= hi; }

  friend constexpr bool operator==(CU, CU) noexcept = default;
};

/// Builds a CU, throwing if lo > hi or lo < 0.
CU make_cu(Unit lo, Unit hi);

/// a ⊇ b
constexpr bool cu_includes(CU a, CU b) noexcept {
  return a.lo <= b.lo && b.hi <= a.hi;
}

/// a ⊋ b
constexpr bool cu_properly_includes(CU a, CU b) noexcept {
  return cu_includes(a, b) && a != b;
}

constexpr bool cu_incomparable(CU a, CU b) noexcept {
  return !cu_includes(a, b) && !cu_includes(b, a);
}

/// Returns [c.lo, c.lo + n - 1]; throws if c is narrower than n.
CU first_fit_sub_cu(CU c, Unit n);

std::ostream& operator<<(std::ostream& os, CU c);

/// A set of units kept as sorted, disjoint, non-adjacent CUs, so that every
/// stored CU is maximal.
class UnitSet {
public:
  UnitSet() = default;

  /// Canonicalizes an arbitrary list of CUs (overlaps and adjacency merge).
  UnitSet(std::initializer_list<CU> cus);
  static UnitSet from_cus(std::vector<CU> cus);

  /// All units [0, omega - 1]; empty when omega is 0.
  static UnitSet full(Unit omega);

  std::span<const CU> cus() const noexcept { return cus_; }
  std::size_t size() const noexcept { return cus_.size(); }
  bool empty() const noexcept { return cus_.empty(); }

  /// Total number of units in the set.
  std::int64_t unit_count() const noexcept;

  bool contains(Unit u) const noexcept;
  /// True iff every unit of c is in the set.
  bool contains(CU c) const noexcept;
  /// True iff at least one unit of c is in the set.
  bool overlaps(CU c) const noexcept;

  /// Checks the canonical-form invariant.
  bool is_canonical() const noexcept;

  friend bool operator==(const UnitSet&, const UnitSet&) = default;

private:
  std::vector<CU> cus_;
};

std::ostream& operator<<(std::ostream& os, const UnitSet& s);

UnitSet intersect(const UnitSet& a, const UnitSet& b);

/// Maximal CUs of c ∩ s, appended to out (out is cleared first).
void intersect_into(CU c, const UnitSet& s, std::vector<CU>& out);

/// Removes the units of c; throws SpectrumError if any unit of c is missing.
UnitSet allocate(const UnitSet& s, CU c);

/// Adds the units of c; throws SpectrumError if any unit of c is present.
UnitSet release(const UnitSet& s, CU c);

}  // namespace eon
