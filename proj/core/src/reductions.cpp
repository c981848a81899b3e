#include "matchdc/reductions.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "matchdc/feasibility.hpp"

namespace matchdc {

namespace {

void require_valid(const ValidationReport& report, const char* what) {
  if (report.ok()) return;
  std::ostringstream os;
  os << what << ": input does not validate: " << report.errors.front();
  throw std::invalid_argument(os.str());
}

std::string pad(int value, int width) {
  std::string digits = std::to_string(value);
  while (static_cast<int>(digits.size()) < width) digits.insert(0, "0");
  return digits;
}

int width_of(int count) {
  return static_cast<int>(std::to_string(count < 1 ? 1 : count).size());
}

}  // namespace

ScdcToHrqResult reduce_scdc_to_hrq(const ScdcInstance& inst) {
  require_valid(validate_scdc(inst), "reduce_scdc_to_hrq");

  ScdcToHrqResult out;
  HrqInstance& hrq = out.instance;
  ReductionMap& map = out.map;

  // Distinct type vectors, ordered by their bit strings ("00" < "01" < ...).
  std::set<std::string> distinct;
  for (const auto& [sid, student] : inst.students)
    distinct.insert(student.type_vector.key());

  for (const auto& [sid, _] : inst.students) {
    Id did = "d_" + sid;
    map.student_to_doctor[sid] = did;
    map.doctor_to_student[did] = sid;
    hrq.doctors[did];
  }

  for (const auto& [cid, school] : inst.schools) {
    SchoolImage& image = map.schools[cid];
    for (const std::string& key : distinct) {
      Id hid = "h_" + cid + "_" + key;
      if (hrq.hospitals.count(hid))
        throw std::runtime_error("hospital id collision: " + hid);
      hrq.hospitals[hid].capacity = school.capacity;
      image.hospitals[key] = hid;
    }
  }

  // Contracts: (s, c) becomes (d, h) at the hospital of s's type vector.
  for (const auto& [sid, student] : inst.students) {
    const Id& did = map.student_to_doctor[sid];
    const std::string key = student.type_vector.key();
    for (const Id& cid : student.prefs.ranked) {
      const Id& hid = map.schools[cid].hospitals[key];
      hrq.doctors[did].prefs.ranked.push_back(hid);
      Contract x{sid, cid};
      Contract y{did, hid};
      map.contract_to_induced[x] = y;
      map.contract_from_induced[y] = x;
    }
  }

  // Hospital priorities: the school priority restricted to each hospital.
  for (const auto& [cid, school] : inst.schools)
    for (const Id& sid : school.priority.ranked) {
      const std::string key = inst.students.at(sid).type_vector.key();
      const Id& hid = map.schools[cid].hospitals[key];
      hrq.hospitals[hid].priority.ranked.push_back(map.student_to_doctor[sid]);
    }

  // Regions: one per school (capped by the school capacity) and one per
  // type (carrying that type's quota bounds), priorities again restricted
  // from the school priority.
  std::set<Id> region_ids;
  const std::size_t k = inst.num_types();
  for (const auto& [cid, school] : inst.schools) {
    SchoolImage& image = map.schools[cid];

    RegionSpec school_region;
    school_region.id = "r_" + cid;
    school_region.min_quota = 0;
    school_region.max_quota = school.capacity;
    for (const auto& [key, hid] : image.hospitals)
      school_region.hospitals.insert(hid);
    for (const Id& sid : school.priority.ranked)
      school_region.priority.push_back(
          map.contract_to_induced.at({sid, cid}));
    if (!region_ids.insert(school_region.id).second)
      throw std::runtime_error("region id collision: " + school_region.id);
    image.school_region = school_region.id;
    hrq.regions.push_back(std::move(school_region));

    for (std::size_t j = 0; j < k; ++j) {
      RegionSpec type_region;
      type_region.id = "r_" + cid + "_" + std::to_string(j + 1);
      type_region.min_quota = school.min_quotas[j];
      type_region.max_quota = school.max_quotas[j];
      for (const auto& [key, hid] : image.hospitals)
        if (key[j] == '1') type_region.hospitals.insert(hid);
      for (const Id& sid : school.priority.ranked)
        if (inst.students.at(sid).type_vector.bits[j] == 1)
          type_region.priority.push_back(
              map.contract_to_induced.at({sid, cid}));
      if (!region_ids.insert(type_region.id).second)
        throw std::runtime_error("region id collision: " + type_region.id);
      image.type_regions.push_back(type_region.id);
      hrq.regions.push_back(std::move(type_region));
    }
  }

  return out;
}

namespace {

Matching map_through(const std::map<Contract, Contract>& bijection,
                     const Matching& outcome, const char* what) {
  std::vector<Contract> mapped;
  for (const Contract& x : outcome.pairs()) {
    auto it = bijection.find(x);
    if (it == bijection.end()) {
      std::ostringstream os;
      os << what << ": unknown contract (" << x.agent << ", "
         << x.institution << ")";
      throw std::invalid_argument(os.str());
    }
    mapped.push_back(it->second);
  }
  return Matching(std::move(mapped));
}

}  // namespace

Matching lift_matching(const ReductionMap& map, const Matching& outcome) {
  return map_through(map.contract_to_induced, outcome, "lift_matching");
}

Matching restore_matching(const ReductionMap& map, const Matching& outcome) {
  return map_through(map.contract_from_induced, outcome, "restore_matching");
}

MinQuotaFreeResult eliminate_min_quotas(const HrqInstance& inst) {
  require_valid(validate_hrq(inst), "eliminate_min_quotas");

  const int n_doctors = static_cast<int>(inst.doctors.size());
  for (const RegionSpec& region : inst.regions)
    if (region.min_quota > n_doctors) {
      std::ostringstream os;
      os << "eliminate_min_quotas: region '" << region.id
         << "' requires " << region.min_quota << " doctors but only "
         << n_doctors << " exist";
      throw std::invalid_argument(os.str());
    }

  MinQuotaFreeResult out;
  HrqInstance& plus = out.instance;
  plus = inst;

  Id null_id = "h0";
  for (int suffix = 1; plus.hospitals.count(null_id); ++suffix)
    null_id = "h0_" + std::to_string(suffix);
  out.null_hospital = null_id;

  Hospital& null_hospital = plus.hospitals[null_id];
  null_hospital.capacity = n_doctors;
  for (auto& [did, doctor] : plus.doctors) {
    doctor.prefs.ranked.push_back(null_id);  // least preferred acceptable
    null_hospital.priority.ranked.push_back(did);
  }

  std::set<Id> used_region_ids;
  for (const RegionSpec& region : inst.regions) used_region_ids.insert(region.id);

  std::vector<RegionSpec> regions;
  for (const RegionSpec& region : inst.regions) {
    RegionSpec kept = region;
    kept.min_quota = 0;
    regions.push_back(std::move(kept));

    RegionSpec complement;
    complement.id = region.id + "_hat";
    while (!used_region_ids.insert(complement.id).second)
      complement.id += "_";
    complement.min_quota = 0;
    complement.max_quota = n_doctors - region.min_quota;
    for (const auto& [hid, _] : plus.hospitals)
      if (!region.hospitals.count(hid)) complement.hospitals.insert(hid);
    // The source construction needs no orderings; contracts sorted by
    // (doctor, hospital) keep the output canonical.
    for (const Contract& y : plus.contracts())
      if (complement.hospitals.count(y.institution))
        complement.priority.push_back(y);
    regions.push_back(std::move(complement));
  }
  plus.regions = std::move(regions);

  return out;
}

Matching augment_with_null(const HrqInstance& transformed,
                           const Matching& outcome, const Id& null_hospital) {
  if (!transformed.hospitals.count(null_hospital))
    throw std::invalid_argument("augment_with_null: unknown null hospital '" +
                                null_hospital + "'");
  std::set<Id> matched;
  for (const Contract& y : outcome.pairs()) matched.insert(y.agent);
  Matching augmented = outcome;
  for (const auto& [did, _] : transformed.doctors)
    if (!matched.count(did)) augmented.insert({did, null_hospital});
  return augmented;
}

ValidationReport validate_set_cover(const SetCoverInstance& sc) {
  ValidationReport report;
  auto& errors = report.errors;

  if (sc.budget < 0) errors.push_back("budget is negative");
  std::set<Id> universe(sc.universe.begin(), sc.universe.end());
  if (universe.size() != sc.universe.size())
    errors.push_back("duplicate universe elements");

  std::map<Id, int> degree;
  for (std::size_t j = 0; j < sc.family.size(); ++j) {
    const auto& f = sc.family[j];
    if (f.size() > 3) {
      std::ostringstream os;
      os << "family set " << j << " has " << f.size() << " elements (> 3)";
      errors.push_back(os.str());
    }
    for (const Id& u : f) {
      if (!universe.count(u))
        errors.push_back("family set " + std::to_string(j) +
                         " contains unknown element '" + u + "'");
      ++degree[u];
    }
  }
  for (const auto& [u, d] : degree)
    if (d > 3)
      errors.push_back("element '" + u + "' occurs in " + std::to_string(d) +
                       " family sets (> 3)");

  return report;
}

ScdcInstance gadget_from_set_cover(const SetCoverInstance& sc) {
  require_valid(validate_set_cover(sc), "gadget_from_set_cover");

  ScdcInstance inst;
  inst.type_names = sc.universe;
  const std::size_t k = sc.universe.size();

  School school;
  school.capacity = sc.budget;
  // No upper bound for any type; the capacity already caps type sums, so
  // this stand-in never binds (max(.,1) keeps budget 0 well-formed).
  school.max_quotas.assign(k, std::max(sc.budget, 1));
  school.min_quotas.assign(k, 1);

  const int width = width_of(static_cast<int>(sc.family.size()));
  for (std::size_t j = 0; j < sc.family.size(); ++j) {
    Id sid = "s" + pad(static_cast<int>(j) + 1, width);
    Student student;
    student.type_vector.bits.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      if (sc.family[j].count(sc.universe[i])) student.type_vector.bits[i] = 1;
    student.prefs.ranked = {"c"};
    inst.students[sid] = std::move(student);
    school.priority.ranked.push_back(sid);  // family-index order
  }
  inst.schools["c"] = std::move(school);

  // The model requires at least as many students as types. When the
  // family is smaller than the universe, top up with inert students that
  // accept no school at all; they cannot be matched, so the feasible
  // outcomes are untouched.
  const int deficit =
      static_cast<int>(k) - static_cast<int>(sc.family.size());
  for (int i = 1; i <= deficit; ++i) {
    Student filler;
    filler.type_vector.bits.assign(k, 0);
    inst.students["z" + pad(i, width_of(deficit))] = std::move(filler);
  }
  return inst;
}

std::vector<std::size_t> set_cover_from_matching(const SetCoverInstance& sc,
                                                 const ScdcInstance& gadget,
                                                 const Matching& outcome) {
  auto verdict = check_feasible_scdc(gadget, outcome);
  if (!verdict.feasible)
    throw std::invalid_argument(
        "set_cover_from_matching: outcome is infeasible for the gadget: " +
        describe(verdict.violations.front()));

  const int width = width_of(static_cast<int>(sc.family.size()));
  std::map<Id, std::size_t> index_of;
  for (std::size_t j = 0; j < sc.family.size(); ++j)
    index_of["s" + pad(static_cast<int>(j) + 1, width)] = j;

  std::vector<std::size_t> chosen;
  for (const Contract& x : outcome.pairs()) chosen.push_back(index_of.at(x.agent));
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

ValidationReport validate_restricted_3sat(const CnfFormula& f) {
  ValidationReport report;
  auto& errors = report.errors;

  if (f.num_variables < 0) errors.push_back("negative variable count");
  std::map<int, int> occurrences;  // signed literal -> count
  for (std::size_t j = 0; j < f.clauses.size(); ++j)
    for (int lit : f.clauses[j]) {
      int var = std::abs(lit);
      if (lit == 0 || var > f.num_variables) {
        errors.push_back("clause " + std::to_string(j + 1) +
                         " has an out-of-range literal " + std::to_string(lit));
        continue;
      }
      ++occurrences[lit];
    }
  for (int v = 1; v <= f.num_variables; ++v)
    for (int lit : {v, -v})
      if (occurrences[lit] != 2) {
        std::ostringstream os;
        os << "literal " << lit << " appears " << occurrences[lit]
           << " times, expected exactly 2";
        errors.push_back(os.str());
      }
  return report;
}

bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment) {
  for (const auto& clause : f.clauses) {
    bool clause_true = false;
    for (int lit : clause) {
      int var = std::abs(lit);
      if (var < 1 || var > static_cast<int>(assignment.size())) continue;
      if (assignment[var - 1] == (lit > 0)) {
        clause_true = true;
        break;
      }
    }
    if (!clause_true) return false;
  }
  return true;
}

ThreeSatNames::ThreeSatNames(const CnfFormula& f)
    : var_width(width_of(f.num_variables)),
      clause_width(width_of(static_cast<int>(f.clauses.size()))) {}

std::string ThreeSatNames::var_tag(int var) const {
  return "u" + pad(var, var_width);
}

std::string ThreeSatNames::clause_school(int clause) const {
  return "o" + pad(clause, clause_width);
}

std::string ThreeSatNames::student_s(int var, int k) const {
  return var_tag(var) + "_s" + std::to_string(k);
}

std::string ThreeSatNames::student_t(int var, int k) const {
  return var_tag(var) + "_t" + std::to_string(k);
}

std::string ThreeSatNames::student_f(int var, int k) const {
  return var_tag(var) + "_f" + std::to_string(k);
}

std::string ThreeSatNames::student_alpha(int var, int k, int m) const {
  return var_tag(var) + "_a" + std::to_string(k) + "_" + std::to_string(m);
}

std::string ThreeSatNames::school_c(int var, int k) const {
  return var_tag(var) + "_c" + std::to_string(k);
}

std::string ThreeSatNames::school_ct(int var, int k) const {
  return var_tag(var) + "_ct" + std::to_string(k);
}

std::string ThreeSatNames::school_cf(int var, int k) const {
  return var_tag(var) + "_cf" + std::to_string(k);
}

std::string ThreeSatNames::school_beta(int var, int k, int m) const {
  return var_tag(var) + "_b" + std::to_string(k) + "_" + std::to_string(m);
}

int clause_of_occurrence(const CnfFormula& f, int var, bool positive,
                         int occurrence) {
  int seen = 0;
  for (std::size_t j = 0; j < f.clauses.size(); ++j)
    for (int lit : f.clauses[j])
      if (std::abs(lit) == var && (lit > 0) == positive && ++seen == occurrence)
        return static_cast<int>(j) + 1;
  std::ostringstream os;
  os << "occurrence " << occurrence << " of literal "
     << (positive ? var : -var) << " not found";
  throw std::invalid_argument(os.str());
}

ScdcInstance gadget_from_3sat(const CnfFormula& f) {
  require_valid(validate_restricted_3sat(f), "gadget_from_3sat");

  ScdcInstance inst;
  if (f.num_variables == 0) return inst;
  inst.type_names = {"t1", "t2"};
  const ThreeSatNames names(f);

  auto add_student = [&](const Id& id, std::vector<int> bits,
                         std::vector<Id> prefs) {
    Student student;
    student.type_vector.bits = std::move(bits);
    student.prefs.ranked = std::move(prefs);
    inst.students[id] = std::move(student);
  };
  auto add_school = [&](const Id& id, int capacity, std::vector<int> max_q,
                        std::vector<Id> priority) {
    School school;
    school.capacity = capacity;
    school.max_quotas = std::move(max_q);
    school.min_quotas = {0, 0};
    school.priority.ranked = std::move(priority);
    inst.schools[id] = std::move(school);
  };

  for (int i = 1; i <= f.num_variables; ++i) {
    const Id c1 = names.school_c(i, 1), c2 = names.school_c(i, 2);
    const Id ct1 = names.school_ct(i, 1), ct2 = names.school_ct(i, 2);
    const Id cf1 = names.school_cf(i, 1), cf2 = names.school_cf(i, 2);
    const Id s1 = names.student_s(i, 1), s2 = names.student_s(i, 2);
    const Id s3 = names.student_s(i, 3), s4 = names.student_s(i, 4);
    const Id s5 = names.student_s(i, 5), s6 = names.student_s(i, 6);
    const Id t1 = names.student_t(i, 1), t2 = names.student_t(i, 2);
    const Id f1 = names.student_f(i, 1), f2 = names.student_f(i, 2);

    const Id o_t1 = names.clause_school(clause_of_occurrence(f, i, true, 1));
    const Id o_t2 = names.clause_school(clause_of_occurrence(f, i, true, 2));
    const Id o_f1 = names.clause_school(clause_of_occurrence(f, i, false, 1));
    const Id o_f2 = names.clause_school(clause_of_occurrence(f, i, false, 2));

    add_student(s1, {1, 1}, {c1, ct1});
    add_student(s2, {1, 1}, {c2, cf1});
    add_student(s3, {1, 0}, {c1, c2});
    add_student(s4, {0, 1}, {c2, c1});
    add_student(s5, {0, 0}, {c1, ct2});
    add_student(s6, {0, 0}, {c2, cf2});
    add_student(t1, {1, 0}, {ct1, o_t1, names.school_beta(i, 1, 3)});
    add_student(t2, {0, 1}, {ct2, o_t2, names.school_beta(i, 2, 3)});
    add_student(f1, {1, 0}, {cf1, o_f1, names.school_beta(i, 3, 3)});
    add_student(f2, {0, 1}, {cf2, o_f2, names.school_beta(i, 4, 3)});

    add_school(c1, 2, {1, 1}, {s4, s1, s3, s5});
    add_school(c2, 2, {1, 1}, {s3, s2, s4, s6});
    add_school(ct1, 1, {1, 1}, {s1, t1});
    add_school(ct2, 1, {1, 1}, {s5, t2});
    add_school(cf1, 1, {1, 1}, {s2, f1});
    add_school(cf2, 1, {1, 1}, {s6, f2});

    const Id theta[5] = {"", t1, t2, f1, f2};
    for (int k = 1; k <= 4; ++k) {
      const Id a1 = names.student_alpha(i, k, 1);
      const Id a2 = names.student_alpha(i, k, 2);
      const Id a3 = names.student_alpha(i, k, 3);
      const Id b1 = names.school_beta(i, k, 1);
      const Id b2 = names.school_beta(i, k, 2);
      const Id b3 = names.school_beta(i, k, 3);
      add_student(a1, {0, 1}, {b2, b1});
      add_student(a2, {1, 0}, {b1, b2});
      add_student(a3, {1, 1}, {b3, b1});
      add_school(b1, 2, {1, 1}, {a1, a3, a2});
      add_school(b2, 1, {1, 1}, {a2, a1});
      add_school(b3, 1, {1, 1}, {theta[k], a3});
    }
  }

  // One capacity-2 school per clause, constrained by capacity only;
  // priority follows the clause's literal order.
  std::map<int, int> occurrence_seen;
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    std::vector<Id> priority;
    for (int lit : f.clauses[j]) {
      int var = std::abs(lit);
      int occurrence = ++occurrence_seen[lit];
      priority.push_back(lit > 0 ? names.student_t(var, occurrence)
                                 : names.student_f(var, occurrence));
    }
    add_school(names.clause_school(static_cast<int>(j) + 1), 2, {2, 2},
               std::move(priority));
  }

  return inst;
}

Matching outcome_from_assignment(const CnfFormula& f,
                                 const ScdcInstance& gadget,
                                 const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != f.num_variables)
    throw std::invalid_argument(
        "outcome_from_assignment: assignment size mismatch");
  const ThreeSatNames names(f);
  (void)gadget;

  std::vector<Contract> pairs;
  for (int i = 1; i <= f.num_variables; ++i) {
    const bool value = assignment[i - 1];
    const Id o_t1 = names.clause_school(clause_of_occurrence(f, i, true, 1));
    const Id o_t2 = names.clause_school(clause_of_occurrence(f, i, true, 2));
    const Id o_f1 = names.clause_school(clause_of_occurrence(f, i, false, 1));
    const Id o_f2 = names.clause_school(clause_of_occurrence(f, i, false, 2));

    if (value) {
      pairs.push_back({names.student_s(i, 1), names.school_c(i, 1)});
      pairs.push_back({names.student_s(i, 2), names.school_cf(i, 1)});
      pairs.push_back({names.student_s(i, 3), names.school_c(i, 2)});
      pairs.push_back({names.student_s(i, 4), names.school_c(i, 2)});
      pairs.push_back({names.student_s(i, 5), names.school_c(i, 1)});
      pairs.push_back({names.student_s(i, 6), names.school_cf(i, 2)});
      pairs.push_back({names.student_t(i, 1), names.school_ct(i, 1)});
      pairs.push_back({names.student_t(i, 2), names.school_ct(i, 2)});
      pairs.push_back({names.student_f(i, 1), o_f1});
      pairs.push_back({names.student_f(i, 2), o_f2});
    } else {
      pairs.push_back({names.student_s(i, 1), names.school_ct(i, 1)});
      pairs.push_back({names.student_s(i, 2), names.school_c(i, 2)});
      pairs.push_back({names.student_s(i, 3), names.school_c(i, 1)});
      pairs.push_back({names.student_s(i, 4), names.school_c(i, 1)});
      pairs.push_back({names.student_s(i, 5), names.school_ct(i, 2)});
      pairs.push_back({names.student_s(i, 6), names.school_c(i, 2)});
      pairs.push_back({names.student_t(i, 1), o_t1});
      pairs.push_back({names.student_t(i, 2), o_t2});
      pairs.push_back({names.student_f(i, 1), names.school_cf(i, 1)});
      pairs.push_back({names.student_f(i, 2), names.school_cf(i, 2)});
    }
    for (int k = 1; k <= 4; ++k) {
      pairs.push_back(
          {names.student_alpha(i, k, 1), names.school_beta(i, k, 2)});
      pairs.push_back(
          {names.student_alpha(i, k, 2), names.school_beta(i, k, 1)});
      pairs.push_back(
          {names.student_alpha(i, k, 3), names.school_beta(i, k, 3)});
    }
  }
  return Matching(std::move(pairs));
}

void apply_master_list_to_region_priorities(HrqInstance& inst,
                                            const MasterList& ml) {
  std::map<Id, std::size_t> rank;
  for (std::size_t i = 0; i < ml.order.size(); ++i) rank[ml.order[i]] = i;
  for (const auto& [did, _] : inst.doctors)
    if (!rank.count(did))
      throw std::invalid_argument("master list does not cover doctor '" + did +
                                  "'");
  for (RegionSpec& region : inst.regions)
    std::sort(region.priority.begin(), region.priority.end(),
              [&](const Contract& a, const Contract& b) {
                auto ra = rank.at(a.agent), rb = rank.at(b.agent);
                return ra != rb ? ra < rb : a.institution < b.institution;
              });
}

}  // namespace matchdc
