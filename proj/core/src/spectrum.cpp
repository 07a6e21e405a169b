#include "eon/spectrum.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace eon {

CU make_cu(Unit lo, Unit hi) {
  if (lo < 0 || hi < lo) {
    std::ostringstream msg;
    msg << "invalid CU [" << lo << "," << hi << "]";
    throw SpectrumError(msg.str());
  }
  return CU{lo, hi};
}

CU first_fit_sub_cu(CU c, Unit n) {
  if (n < 1 || c.width() < n) {
    std::ostringstream msg;
    msg << "cannot carve " << n << " units from " << c;
    throw SpectrumError(msg.str());
  }
  return CU{c.lo, c.lo + n - 1};
}

std::ostream& operator<<(std::ostream& os, CU c) {
  return os << '[' << c.lo << ',' << c.hi << ']';
}

UnitSet::UnitSet(std::initializer_list<CU> cus)
    : UnitSet(from_cus(std::vector<CU>(cus))) {}

UnitSet UnitSet::from_cus(std::vector<CU> cus) {
  for (const CU& c : cus) {
    make_cu(c.lo, c.hi);
  }
  std::sort(cus.begin(), cus.end(),
            [](CU a, CU b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  UnitSet out;
  for (const CU& c : cus) {
    // Merge on overlap or adjacency (gap of zero units).
    if (!out.cus_.empty() && c.lo <= out.cus_.back().hi + 1) {
      out.cus_.back().hi = std::max(out.cus_.back().hi, c.hi);
    } else {
      out.cus_.push_back(c);
    }
  }
  return out;
}

UnitSet UnitSet::full(Unit omega) {
  UnitSet out;
  if (omega > 0) {
    out.cus_.push_back(CU{0, omega - 1});
  }
  return out;
}

std::int64_t UnitSet::unit_count() const noexcept {
  std::int64_t n = 0;
  for (const CU& c : cus_) {
    n += c.width();
  }
  return n;
}

namespace {

// First CU whose hi >= u.
std::vector<CU>::const_iterator first_reaching(const std::vector<CU>& cus, Unit u) {
  return std::lower_bound(cus.begin(), cus.end(), u,
                          [](CU c, Unit v) { return c.hi < v; });
}

}  // namespace

bool UnitSet::contains(Unit u) const noexcept {
  auto it = first_reaching(cus_, u);
  return it != cus_.end() && it->lo <= u;
}

bool UnitSet::contains(CU c) const noexcept {
  auto it = first_reaching(cus_, c.lo);
  return it != cus_.end() && cu_includes(*it, c);
}

bool UnitSet::overlaps(CU c) const noexcept {
  auto it = first_reaching(cus_, c.lo);
  return it != cus_.end() && it->lo <= c.hi;
}

bool UnitSet::is_canonical() const noexcept {
  for (std::size_t i = 0; i < cus_.size(); ++i) {
    if (cus_[i].lo < 0 || cus_[i].hi < cus_[i].lo) {
      return false;
    }
    if (i > 0 && cus_[i].lo <= cus_[i - 1].hi + 1) {
      return false;
    }
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const UnitSet& s) {
  os << '{';
  bool first = true;
  for (const CU& c : s.cus()) {
    if (!first) {
      os << ',';
    }
    first = false;
    os << c;
  }
  return os << '}';
}

UnitSet intersect(const UnitSet& a, const UnitSet& b) {
  std::vector<CU> out;
  auto ia = a.cus().begin();
  auto ib = b.cus().begin();
  while (ia != a.cus().end() && ib != b.cus().end()) {
    const Unit lo = std::max(ia->lo, ib->lo);
    const Unit hi = std::min(ia->hi, ib->hi);
    if (lo <= hi) {
      out.push_back(CU{lo, hi});
    }
    if (ia->hi < ib->hi) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return UnitSet::from_cus(std::move(out));
}

void intersect_into(CU c, const UnitSet& s, std::vector<CU>& out) {
  out.clear();
  const auto& cus = s.cus();
  auto it = std::lower_bound(cus.begin(), cus.end(), c.lo,
                             [](CU x, Unit v) { return x.hi < v; });
  for (; it != cus.end() && it->lo <= c.hi; ++it) {
    out.push_back(CU{std::max(it->lo, c.lo), std::min(it->hi, c.hi)});
  }
}

UnitSet allocate(const UnitSet& s, CU c) {
  if (!s.contains(c)) {
    std::ostringstream msg;
    msg << "allocate: " << c << " not available in " << s;
    throw SpectrumError(msg.str());
  }
  std::vector<CU> out;
  out.reserve(s.size() + 1);
  for (const CU& x : s.cus()) {
    if (!cu_includes(x, c)) {
      out.push_back(x);
      continue;
    }
    if (x.lo < c.lo) {
      out.push_back(CU{x.lo, c.lo - 1});
    }
    if (c.hi < x.hi) {
      out.push_back(CU{c.hi + 1, x.hi});
    }
  }
  return UnitSet::from_cus(std::move(out));
}

UnitSet release(const UnitSet& s, CU c) {
  make_cu(c.lo, c.hi);
  if (s.overlaps(c)) {
    std::ostringstream msg;
    msg << "release: " << c << " overlaps available units " << s;
    throw SpectrumError(msg.str());
  }
  std::vector<CU> out(s.cus().begin(), s.cus().end());
  out.push_back(c);
  return UnitSet::from_cus(std::move(out));
}

}  // namespace eon
