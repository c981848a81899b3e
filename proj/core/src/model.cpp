#include "matchdc/model.hpp"

#include <sstream>
#include <unordered_set>

namespace matchdc {

namespace {

std::string fmt(const char* what, const Id& a, const Id& b) {
  std::ostringstream os;
  os << what << " '" << a << "' / '" << b << "'";
  return os.str();
}

void check_preference_targets(const PreferenceOrder& order,
                              const char* owner_kind, const Id& owner,
                              const char* target_kind,
                              const std::set<Id>& known,
                              std::vector<std::string>& errors) {
  std::unordered_set<std::string> seen;
  for (const Id& target : order.ranked) {
    if (!seen.insert(target).second) {
      std::ostringstream os;
      os << owner_kind << " '" << owner << "' ranks " << target_kind << " '"
         << target << "' more than once";
      errors.push_back(os.str());
    }
    if (!known.count(target)) {
      std::ostringstream os;
      os << owner_kind << " '" << owner << "' ranks unknown " << target_kind
         << " '" << target << "'";
      errors.push_back(os.str());
    }
  }
}

void check_quota_bounds(int value, const char* what, const Id& owner,
                        std::vector<std::string>& errors) {
  if (value < 0 || value > kMaxQuota) {
    std::ostringstream os;
    os << what << " of '" << owner << "' out of range [0, " << kMaxQuota
       << "]: " << value;
    errors.push_back(os.str());
  }
}

}  // namespace

std::string TypeVector::key() const {
  std::string k;
  k.reserve(bits.size());
  for (int b : bits) k.push_back(b ? '1' : '0');
  return k;
}

bool PreferenceOrder::contains(const Id& id) const {
  return std::find(ranked.begin(), ranked.end(), id) != ranked.end();
}

std::optional<std::size_t> PreferenceOrder::rank_of(const Id& id) const {
  auto it = std::find(ranked.begin(), ranked.end(), id);
  if (it == ranked.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ranked.begin());
}

bool PreferenceOrder::prefers(const Id& a, const Id& b) const {
  auto ra = rank_of(a);
  if (!ra) return false;
  auto rb = rank_of(b);
  return !rb || *ra < *rb;
}

bool ScdcInstance::has_contract(const Id& student, const Id& school) const {
  auto s = students.find(student);
  auto c = schools.find(school);
  return s != students.end() && c != schools.end() &&
         s->second.prefs.contains(school) &&
         c->second.priority.contains(student);
}

std::vector<Contract> ScdcInstance::contracts() const {
  std::vector<Contract> out;
  for (const auto& [sid, student] : students)
    for (const Id& cid : student.prefs.ranked)
      if (has_contract(sid, cid)) out.push_back({sid, cid});
  std::sort(out.begin(), out.end());
  return out;
}

bool HrqInstance::has_contract(const Id& doctor, const Id& hospital) const {
  auto d = doctors.find(doctor);
  auto h = hospitals.find(hospital);
  return d != doctors.end() && h != hospitals.end() &&
         d->second.prefs.contains(hospital) &&
         h->second.priority.contains(doctor);
}

std::vector<Contract> HrqInstance::contracts() const {
  std::vector<Contract> out;
  for (const auto& [did, doctor] : doctors)
    for (const Id& hid : doctor.prefs.ranked)
      if (has_contract(did, hid)) out.push_back({did, hid});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> HrqInstance::regions_containing(
    const Id& hospital) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < regions.size(); ++i)
    if (regions[i].hospitals.count(hospital)) out.push_back(i);
  return out;
}

Matching::Matching(std::vector<Contract> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool Matching::contains(const Contract& x) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), x);
}

void Matching::insert(const Contract& x) {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), x);
  if (it == pairs_.end() || *it != x) pairs_.insert(it, x);
}

void Matching::erase(const Contract& x) {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), x);
  if (it != pairs_.end() && *it == x) pairs_.erase(it);
}

std::optional<Id> Matching::assignment_of(const Id& agent) const {
  for (const Contract& x : pairs_)
    if (x.agent == agent) return x.institution;
  return std::nullopt;
}

std::vector<Id> Matching::agents_at(const Id& institution) const {
  std::vector<Id> out;
  for (const Contract& x : pairs_)
    if (x.institution == institution) out.push_back(x.agent);
  return out;
}

std::optional<std::size_t> MasterList::rank_of(const Id& id) const {
  auto it = std::find(order.begin(), order.end(), id);
  if (it == order.end()) return std::nullopt;
  return static_cast<std::size_t>(it - order.begin());
}

ValidationReport validate_scdc(const ScdcInstance& inst) {
  ValidationReport report;
  auto& errors = report.errors;

  const std::size_t k = inst.num_types();
  if (k > inst.students.size()) {
    std::ostringstream os;
    os << "type space larger than student set (" << k << " > "
       << inst.students.size() << ")";
    errors.push_back(os.str());
  }
  {
    std::set<std::string> names(inst.type_names.begin(),
                                inst.type_names.end());
    if (names.size() != inst.type_names.size())
      errors.push_back("duplicate type names");
  }

  std::set<Id> student_ids;
  std::set<Id> school_ids;
  for (const auto& [sid, _] : inst.students) student_ids.insert(sid);
  for (const auto& [cid, _] : inst.schools) school_ids.insert(cid);

  for (const auto& [sid, student] : inst.students) {
    if (student.type_vector.bits.size() != k) {
      std::ostringstream os;
      os << "student '" << sid << "' has type vector of length "
         << student.type_vector.bits.size() << ", expected " << k;
      errors.push_back(os.str());
    }
    for (int b : student.type_vector.bits)
      if (b != 0 && b != 1) {
        errors.push_back("student '" + sid + "' has a non-binary type flag");
        break;
      }
    check_preference_targets(student.prefs, "student", sid, "school",
                             school_ids, errors);
  }

  for (const auto& [cid, school] : inst.schools) {
    check_quota_bounds(school.capacity, "capacity", cid, errors);
    if (school.max_quotas.size() != k || school.min_quotas.size() != k) {
      errors.push_back("school '" + cid +
                       "' has quota vectors not matching the type space");
    } else {
      for (std::size_t j = 0; j < k; ++j) {
        check_quota_bounds(school.max_quotas[j], "max quota", cid, errors);
        check_quota_bounds(school.min_quotas[j], "min quota", cid, errors);
        if (school.min_quotas[j] > school.max_quotas[j]) {
          std::ostringstream os;
          os << "school '" << cid << "': min quota exceeds max quota for type "
             << inst.type_names[j] << " (" << school.min_quotas[j] << " > "
             << school.max_quotas[j] << ")";
          errors.push_back(os.str());
        }
      }
    }
    check_preference_targets(school.priority, "school", cid, "student",
                             student_ids, errors);
  }

  // One-sided listings would make acceptability ambiguous; reject them.
  for (const auto& [sid, student] : inst.students)
    for (const Id& cid : student.prefs.ranked) {
      auto c = inst.schools.find(cid);
      if (c != inst.schools.end() && !c->second.priority.contains(sid))
        errors.push_back(fmt("one-sided listing: student ranks school", sid,
                             cid));
    }
  for (const auto& [cid, school] : inst.schools)
    for (const Id& sid : school.priority.ranked) {
      auto s = inst.students.find(sid);
      if (s != inst.students.end() && !s->second.prefs.contains(cid))
        errors.push_back(fmt("one-sided listing: school ranks student", cid,
                             sid));
    }

  return report;
}

ValidationReport validate_hrq(const HrqInstance& inst) {
  ValidationReport report;
  auto& errors = report.errors;

  std::set<Id> doctor_ids;
  std::set<Id> hospital_ids;
  for (const auto& [did, _] : inst.doctors) doctor_ids.insert(did);
  for (const auto& [hid, _] : inst.hospitals) hospital_ids.insert(hid);

  for (const auto& [did, doctor] : inst.doctors)
    check_preference_targets(doctor.prefs, "doctor", did, "hospital",
                             hospital_ids, errors);
  for (const auto& [hid, hospital] : inst.hospitals) {
    check_quota_bounds(hospital.capacity, "capacity", hid, errors);
    check_preference_targets(hospital.priority, "hospital", hid, "doctor",
                             doctor_ids, errors);
  }

  for (const auto& [did, doctor] : inst.doctors)
    for (const Id& hid : doctor.prefs.ranked) {
      auto h = inst.hospitals.find(hid);
      if (h != inst.hospitals.end() && !h->second.priority.contains(did))
        errors.push_back(fmt("one-sided listing: doctor ranks hospital", did,
                             hid));
    }
  for (const auto& [hid, hospital] : inst.hospitals)
    for (const Id& did : hospital.priority.ranked) {
      auto d = inst.doctors.find(did);
      if (d != inst.doctors.end() && !d->second.prefs.contains(hid))
        errors.push_back(fmt("one-sided listing: hospital ranks doctor", hid,
                             did));
    }

  std::set<Id> region_ids;
  for (const RegionSpec& region : inst.regions) {
    if (!region_ids.insert(region.id).second)
      errors.push_back("duplicate region id '" + region.id + "'");
    check_quota_bounds(region.max_quota, "max quota", region.id, errors);
    check_quota_bounds(region.min_quota, "min quota", region.id, errors);
    if (region.min_quota > region.max_quota) {
      std::ostringstream os;
      os << "region '" << region.id << "': min quota exceeds max quota ("
         << region.min_quota << " > " << region.max_quota << ")";
      errors.push_back(os.str());
    }
    for (const Id& hid : region.hospitals)
      if (!hospital_ids.count(hid))
        errors.push_back("region '" + region.id + "' contains unknown hospital '" +
                         hid + "'");

    // The region priority must list each of the region's contracts exactly
    // once and nothing else.
    std::set<Contract> listed;
    for (const Contract& x : region.priority) {
      if (!listed.insert(x).second) {
        errors.push_back("region '" + region.id + "' ranks contract (" +
                         x.agent + ", " + x.institution + ") more than once");
        continue;
      }
      if (!region.hospitals.count(x.institution))
        errors.push_back("region '" + region.id + "' ranks contract (" +
                         x.agent + ", " + x.institution +
                         ") outside the region");
      else if (!inst.has_contract(x.agent, x.institution))
        errors.push_back("region '" + region.id + "' ranks nonexistent contract (" +
                         x.agent + ", " + x.institution + ")");
    }
    for (const auto& [did, doctor] : inst.doctors)
      for (const Id& hid : doctor.prefs.ranked)
        if (region.hospitals.count(hid) && inst.has_contract(did, hid) &&
            !listed.count({did, hid}))
          errors.push_back("region '" + region.id + "' is missing contract (" +
                           did + ", " + hid + ")");
  }

  return report;
}

bool is_partition(const std::vector<RegionSpec>& regions,
                  const std::set<Id>& hospitals) {
  std::set<Id> covered;
  std::size_t total = 0;
  for (const RegionSpec& region : regions) {
    total += region.hospitals.size();
    covered.insert(region.hospitals.begin(), region.hospitals.end());
  }
  // Disjointness holds iff no element was merged away.
  return covered == hospitals && total == covered.size();
}

bool is_hierarchy(const std::vector<RegionSpec>& regions,
                  const std::set<Id>& hospitals) {
  std::set<Id> covered;
  for (const RegionSpec& region : regions)
    covered.insert(region.hospitals.begin(), region.hospitals.end());
  if (covered != hospitals) return false;

  for (std::size_t i = 0; i < regions.size(); ++i)
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      const auto& a = regions[i].hospitals;
      const auto& b = regions[j].hospitals;
      std::vector<Id> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      bool a_in_b = std::includes(b.begin(), b.end(), a.begin(), a.end());
      bool b_in_a = std::includes(a.begin(), a.end(), b.begin(), b.end());
      if (!a_in_b && !b_in_a) return false;
    }
  return true;
}

}  // namespace matchdc
