#include "reachbound/certbuild/multiplier_degrees.h"

#include <algorithm>
#include <sstream>

#include "reachbound/common/errors.h"

namespace reachbound {
namespace {

const char* CompanionName(Companion c) {
  switch (c) {
    case Companion::kStateRegion: return "hX";
    case Companion::kInputSet: return "hY";
    case Companion::kTimeWindow: return "t(T-t)";
  }
  return "?";
}

}  // namespace

std::string DegreeTable::Describe() const {
  std::ostringstream os;
  os << "d = " << value_degree << ", deg f = " << field_degree
     << ", D = " << total_degree << "\n";
  for (const auto& s : multipliers) {
    os << "  " << s.name << " * " << CompanionName(s.companion) << ": ";
    if (s.present()) {
      os << "degree " << s.degree;
    } else {
      os << "absent";
    }
    os << " (companion degree " << s.companion_degree << ")\n";
  }
  return os.str();
}

DegreeTable MultiplierDegrees(const ProblemSpec& spec) {
  DegreeTable table;
  table.value_degree = spec.d;
  for (const auto& fi : spec.f) table.field_degree = std::max(table.field_degree, fi.degree());
  int total = std::max({spec.d + table.field_degree - 1, spec.d, spec.c.degree(),
                        spec.g.degree()});
  if (total % 2 != 0) ++total;
  table.total_degree = total;
  if (total > kMaxIdentityDegree) {
    std::ostringstream os;
    os << "identity degree D = " << total << " exceeds the supported maximum "
       << kMaxIdentityDegree << " (d = " << spec.d << ", deg f = "
       << table.field_degree << "); lower d";
    throw SizingError(os.str());
  }

  auto slot = [&](const char* name, Companion companion, const Polynomial& h,
                  bool x_only) {
    MultiplierSlot s{name, companion, h.degree(), -1, x_only};
    if (!h.is_zero() && s.companion_degree <= total) {
      const int room = total - s.companion_degree;
      s.degree = room - room % 2;
    }
    return s;
  };
  const Polynomial window = [&] {
    const Polynomial t = Polynomial::Variable(spec.variables, spec.time_index());
    return t * (spec.T - t);
  }();
  table.multipliers = {
      slot("s0", Companion::kStateRegion, spec.h_x, true),
      slot("s1", Companion::kStateRegion, spec.h_x, false),
      slot("s2", Companion::kInputSet, spec.h_y, false),
      slot("s3", Companion::kTimeWindow, window, false),
  };
  return table;
}

}  // namespace reachbound
