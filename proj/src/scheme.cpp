#include "spade/scheme.hpp"

#include <sstream>

namespace spade {

bool InterpPoint::operator<(const InterpPoint& o) const {
  if (at_infinity != o.at_infinity) return at_infinity;
  if (at_infinity) return false;
  if (value.real() != o.value.real()) return value.real() < o.value.real();
  return value.imag() < o.value.imag();
}

std::string InterpPoint::label() const {
  if (at_infinity) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << "(" << value.real() << "," << value.imag() << ")";
  return os.str();
}

InterpolationMultiSet::InterpolationMultiSet(std::vector<MultiSetEntry> entries) {
  for (auto& e : entries) add(e.point, e.multiplicity);
}

void InterpolationMultiSet::add(const InterpPoint& p, int multiplicity) {
  if (multiplicity < 0) throw Error(ErrorCode::InvalidArgument, "negative multiplicity");
  if (multiplicity == 0) return;
  for (auto& e : entries_)
    if (e.point == p) {
      e.multiplicity += multiplicity;
      return;
    }
  entries_.push_back({p, multiplicity});
}

int InterpolationMultiSet::total() const {
  int t = 0;
  for (auto& e : entries_) t += e.multiplicity;
  return t;
}

int InterpolationMultiSet::multiplicity(const InterpPoint& p) const {
  for (auto& e : entries_)
    if (e.point == p) return e.multiplicity;
  return 0;
}

std::vector<MultiSetEntry> InterpolationMultiSet::finite_entries() const {
  std::vector<MultiSetEntry> out;
  for (auto& e : entries_)
    if (!e.point.at_infinity) out.push_back(e);
  return out;
}

bool InterpolationMultiSet::operator==(const InterpolationMultiSet& o) const {
  if (total() != o.total()) return false;
  for (auto& e : entries_)
    if (o.multiplicity(e.point) != e.multiplicity) return false;
  return true;
}

SchemeSpec::SchemeSpec(InterpolationMultiSet base, std::vector<InterpPoint> enumeration)
    : base_(std::move(base)), enum_(std::move(enumeration)) {
  if (base_.total() < 1) throw Error(ErrorCode::InvalidArgument, "base multiset is empty");
  if (enum_.empty()) {
    for (int k = 0; k < base_.infinite_multiplicity(); ++k) enum_.push_back(InterpPoint::infinity());
    for (auto& e : base_.finite_entries())
      for (int k = 0; k < e.multiplicity; ++k) enum_.push_back(e.point);
  }
  InterpolationMultiSet check;
  for (auto& p : enum_) check.add(p);
  if (!(check == base_))
    throw Error(ErrorCode::InvalidArgument, "enumeration does not list the base multiset exactly");
}

InterpolationMultiSet expand(const SchemeSpec& s, int i) {
  if (i < 0) throw Error(ErrorCode::InvalidArgument, "expand needs i >= 0");
  const int N = s.period();
  const int k = i / N, j = i % N;
  InterpolationMultiSet out;
  if (k > 0)
    for (auto& e : s.base().entries()) out.add(e.point, k * e.multiplicity);
  for (int q = 0; q < j; ++q) out.add(s.enumeration()[q]);
  return out;
}

const char* to_string(RegionLabel r) { return r == RegionLabel::D0 ? "D0" : "Dinf"; }

}  // namespace spade
