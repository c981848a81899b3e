#include "matchdc/feasibility.hpp"

#include <sstream>

namespace matchdc {

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::CapacityExceeded: return "CapacityExceeded";
    case Violation::Kind::MultipleAssignments: return "MultipleAssignments";
    case Violation::Kind::TypeMaxViolated: return "TypeMaxViolated";
    case Violation::Kind::TypeMinViolated: return "TypeMinViolated";
    case Violation::Kind::RegionMaxViolated: return "RegionMaxViolated";
    case Violation::Kind::RegionMinViolated: return "RegionMinViolated";
    case Violation::Kind::UnknownContract: return "UnknownContract";
  }
  return "Unknown";
}

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << to_string(v.kind);
  switch (v.kind) {
    case Violation::Kind::CapacityExceeded:
      os << ": '" << v.subject << "' holds " << v.count << " > capacity "
         << v.bound;
      break;
    case Violation::Kind::MultipleAssignments:
      os << ": agent '" << v.subject << "' matched " << v.count << " times";
      break;
    case Violation::Kind::TypeMaxViolated:
    case Violation::Kind::TypeMinViolated:
      os << ": '" << v.subject << "' type " << v.type_name << " count "
         << v.count << " vs bound " << v.bound;
      break;
    case Violation::Kind::RegionMaxViolated:
    case Violation::Kind::RegionMinViolated:
      os << ": region '" << v.subject << "' count " << v.count << " vs bound "
         << v.bound;
      break;
    case Violation::Kind::UnknownContract:
      os << ": (" << v.pair.agent << ", " << v.pair.institution << ")";
      break;
  }
  return os.str();
}

namespace {

void report_multiple_assignments(const std::vector<Contract>& pairs,
                                 std::vector<Violation>& out) {
  // Pairs are sorted by agent, so repeats are adjacent.
  std::size_t i = 0;
  while (i < pairs.size()) {
    std::size_t j = i;
    while (j < pairs.size() && pairs[j].agent == pairs[i].agent) ++j;
    if (j - i > 1)
      out.push_back({Violation::Kind::MultipleAssignments, pairs[i].agent,
                     "", static_cast<int>(j - i), 1, {}});
    i = j;
  }
}

}  // namespace

FeasibilityVerdict check_feasible_scdc(const ScdcInstance& inst,
                                       const Matching& outcome) {
  FeasibilityVerdict verdict;
  auto& violations = verdict.violations;

  std::map<Id, std::vector<const Student*>> admitted;
  for (const Contract& x : outcome.pairs()) {
    auto s = inst.students.find(x.agent);
    if (s == inst.students.end() || !inst.has_contract(x.agent, x.institution)) {
      violations.push_back(
          {Violation::Kind::UnknownContract, "", "", 0, 0, x});
      continue;
    }
    admitted[x.institution].push_back(&s->second);
  }
  report_multiple_assignments(outcome.pairs(), violations);

  const std::size_t k = inst.num_types();
  for (const auto& [cid, school] : inst.schools) {
    auto it = admitted.find(cid);
    std::size_t count = it == admitted.end() ? 0 : it->second.size();
    if (static_cast<int>(count) > school.capacity)
      violations.push_back({Violation::Kind::CapacityExceeded, cid, "",
                            static_cast<int>(count), school.capacity, {}});
    if (school.max_quotas.size() != k || school.min_quotas.size() != k)
      continue;  // malformed quota vectors are a validation concern
    for (std::size_t j = 0; j < k; ++j) {
      int sum = 0;
      if (it != admitted.end())
        for (const Student* s : it->second)
          if (j < s->type_vector.bits.size()) sum += s->type_vector.bits[j];
      if (sum > school.max_quotas[j])
        violations.push_back({Violation::Kind::TypeMaxViolated, cid,
                              inst.type_names[j], sum, school.max_quotas[j],
                              {}});
      if (sum < school.min_quotas[j])
        violations.push_back({Violation::Kind::TypeMinViolated, cid,
                              inst.type_names[j], sum, school.min_quotas[j],
                              {}});
    }
  }

  verdict.feasible = violations.empty();
  return verdict;
}

FeasibilityVerdict check_feasible_hrq(const HrqInstance& inst,
                                      const Matching& outcome) {
  FeasibilityVerdict verdict;
  auto& violations = verdict.violations;

  std::map<Id, int> hospital_count;
  std::set<Contract> valid_pairs;
  for (const Contract& y : outcome.pairs()) {
    if (!inst.has_contract(y.agent, y.institution)) {
      violations.push_back(
          {Violation::Kind::UnknownContract, "", "", 0, 0, y});
      continue;
    }
    ++hospital_count[y.institution];
    valid_pairs.insert(y);
  }
  report_multiple_assignments(outcome.pairs(), violations);

  for (const auto& [hid, hospital] : inst.hospitals) {
    auto it = hospital_count.find(hid);
    int count = it == hospital_count.end() ? 0 : it->second;
    if (count > hospital.capacity)
      violations.push_back({Violation::Kind::CapacityExceeded, hid, "", count,
                            hospital.capacity, {}});
  }

  for (const RegionSpec& region : inst.regions) {
    std::set<Id> doctors_in_region;
    for (const Contract& y : valid_pairs)
      if (region.hospitals.count(y.institution))
        doctors_in_region.insert(y.agent);
    int count = static_cast<int>(doctors_in_region.size());
    if (count > region.max_quota)
      violations.push_back({Violation::Kind::RegionMaxViolated, region.id, "",
                            count, region.max_quota, {}});
    if (count < region.min_quota)
      violations.push_back({Violation::Kind::RegionMinViolated, region.id, "",
                            count, region.min_quota, {}});
  }

  verdict.feasible = violations.empty();
  return verdict;
}

}  // namespace matchdc
