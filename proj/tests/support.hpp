#pragma once

// Shared fixtures and independent reference oracles for the test suites.
// The oracles re-derive feasibility and stability straight from the
// definitions (whole-outcome rebuilds, direct counting) so they share no
// code path with the library's incremental checkers.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "matchdc/model.hpp"
#include "matchdc/reductions.hpp"

namespace testsupport {

using namespace matchdc;

inline Matching make_matching(
    std::vector<std::pair<std::string, std::string>> pairs) {
  std::vector<Contract> contracts;
  for (auto& [a, i] : pairs) contracts.push_back({a, i});
  return Matching(std::move(contracts));
}

// The running example: four students of distinct type vectors, one school
// with capacity 2, max quotas (1,1) and min quotas (1,0).
inline ScdcInstance example1_scdc() {
  ScdcInstance inst;
  inst.type_names = {"t1", "t2"};
  auto add = [&](const Id& sid, std::vector<int> bits) {
    Student s;
    s.type_vector.bits = std::move(bits);
    s.prefs.ranked = {"c"};
    inst.students[sid] = std::move(s);
  };
  add("s1", {0, 0});
  add("s2", {0, 1});
  add("s3", {1, 0});
  add("s4", {1, 1});
  School school;
  school.capacity = 2;
  school.max_quotas = {1, 1};
  school.min_quotas = {1, 0};
  school.priority.ranked = {"s1", "s2", "s3", "s4"};
  inst.schools["c"] = std::move(school);
  return inst;
}

// Two doctors, two singleton regions with min = max = 1; the instance
// whose empty outcome separates the naive min-quota rewrite from the
// null-hospital one.
inline HrqInstance example2_hrq() {
  HrqInstance inst;
  inst.doctors["d1"].prefs.ranked = {"h1", "h2"};
  inst.doctors["d2"].prefs.ranked = {"h1", "h2"};
  for (const char* hid : {"h1", "h2"}) {
    Hospital h;
    h.capacity = 1;
    h.priority.ranked = {"d1", "d2"};
    inst.hospitals[hid] = h;
  }
  RegionSpec r1;
  r1.id = "r1";
  r1.hospitals = {"h1"};
  r1.min_quota = r1.max_quota = 1;
  r1.priority = {{"d1", "h1"}, {"d2", "h1"}};
  RegionSpec r2;
  r2.id = "r2";
  r2.hospitals = {"h2"};
  r2.min_quota = r2.max_quota = 1;
  r2.priority = {{"d1", "h2"}, {"d2", "h2"}};
  inst.regions = {r1, r2};
  return inst;
}

// ---- independent reference machinery ------------------------------------

inline std::optional<std::size_t> ref_rank(const std::vector<Id>& ranked,
                                           const Id& id) {
  for (std::size_t i = 0; i < ranked.size(); ++i)
    if (ranked[i] == id) return i;
  return std::nullopt;
}

inline bool ref_contract_exists(const ScdcInstance& inst, const Id& s,
                                const Id& c) {
  auto si = inst.students.find(s);
  auto ci = inst.schools.find(c);
  return si != inst.students.end() && ci != inst.schools.end() &&
         ref_rank(si->second.prefs.ranked, c).has_value() &&
         ref_rank(ci->second.priority.ranked, s).has_value();
}

inline bool ref_contract_exists(const HrqInstance& inst, const Id& d,
                                const Id& h) {
  auto di = inst.doctors.find(d);
  auto hi = inst.hospitals.find(h);
  return di != inst.doctors.end() && hi != inst.hospitals.end() &&
         ref_rank(di->second.prefs.ranked, h).has_value() &&
         ref_rank(hi->second.priority.ranked, d).has_value();
}

// Per-school type sums recomputed from scratch.
inline std::map<Id, std::vector<int>> ref_type_sums(const ScdcInstance& inst,
                                                    const Matching& m) {
  std::map<Id, std::vector<int>> sums;
  for (const auto& [cid, _] : inst.schools)
    sums[cid].assign(inst.type_names.size(), 0);
  for (const Contract& x : m.pairs()) {
    auto si = inst.students.find(x.agent);
    if (si == inst.students.end() || !sums.count(x.institution)) continue;
    for (std::size_t t = 0; t < inst.type_names.size(); ++t)
      sums[x.institution][t] += si->second.type_vector.bits[t];
  }
  return sums;
}

inline bool ref_feasible_scdc(const ScdcInstance& inst, const Matching& m) {
  std::map<Id, int> assigned;
  std::map<Id, int> roster;
  for (const Contract& x : m.pairs()) {
    if (!ref_contract_exists(inst, x.agent, x.institution)) return false;
    if (++assigned[x.agent] > 1) return false;
    ++roster[x.institution];
  }
  auto sums = ref_type_sums(inst, m);
  for (const auto& [cid, school] : inst.schools) {
    if (roster[cid] > school.capacity) return false;
    for (std::size_t t = 0; t < inst.type_names.size(); ++t)
      if (sums[cid][t] > school.max_quotas[t] ||
          sums[cid][t] < school.min_quotas[t])
        return false;
  }
  return true;
}

inline bool ref_feasible_hrq(const HrqInstance& inst, const Matching& m) {
  std::map<Id, int> assigned;
  std::map<Id, int> roster;
  for (const Contract& y : m.pairs()) {
    if (!ref_contract_exists(inst, y.agent, y.institution)) return false;
    if (++assigned[y.agent] > 1) return false;
    ++roster[y.institution];
  }
  for (const auto& [hid, hospital] : inst.hospitals)
    if (roster[hid] > hospital.capacity) return false;
  for (const RegionSpec& region : inst.regions) {
    std::set<Id> doctors;
    for (const Contract& y : m.pairs())
      if (region.hospitals.count(y.institution)) doctors.insert(y.agent);
    int count = static_cast<int>(doctors.size());
    if (count > region.max_quota || count < region.min_quota) return false;
  }
  return true;
}

// Definition-1 stability checked by rebuilding every candidate outcome:
// for each preferred pair enumerate all displacement subsets of the
// school's roster and re-run the whole-outcome feasibility oracle.
inline bool ref_stable_scdc(const ScdcInstance& inst, const Matching& m) {
  for (const auto& [sid, student] : inst.students) {
    std::optional<Id> current;
    for (const Contract& x : m.pairs())
      if (x.agent == sid) current = x.institution;
    auto current_rank =
        current ? ref_rank(student.prefs.ranked, *current) : std::nullopt;
    for (std::size_t pi = 0; pi < student.prefs.ranked.size(); ++pi) {
      if (current_rank && pi >= *current_rank) break;
      const Id& cid = student.prefs.ranked[pi];
      if (!ref_contract_exists(inst, sid, cid)) continue;
      std::vector<Id> matched;
      for (const Contract& x : m.pairs())
        if (x.institution == cid) matched.push_back(x.agent);
      const auto& priority = inst.schools.at(cid).priority.ranked;
      auto my_rank = ref_rank(priority, sid);
      for (std::size_t mask = 0; mask < (1u << matched.size()); ++mask) {
        bool all_lower = true;
        Matching candidate = m;
        for (std::size_t b = 0; b < matched.size(); ++b)
          if (mask & (1u << b)) {
            auto other_rank = ref_rank(priority, matched[b]);
            if (!my_rank || !other_rank || *other_rank < *my_rank)
              all_lower = false;
            candidate.erase({matched[b], cid});
          }
        if (!all_lower) continue;
        if (current) candidate.erase({sid, *current});
        candidate.insert({sid, cid});
        if (ref_feasible_scdc(inst, candidate)) return false;
      }
    }
  }
  return true;
}

// Stability with regional priorities. Displacement reaches every doctor
// tied to the hospital through some region: a doctor matched to the
// hospital itself must rank below the blocking contract there and in all
// regions containing the hospital; a doctor matched elsewhere must share
// at least one region with the hospital and rank below the blocking
// contract in every region containing both hospitals. This is the reading
// under which blocking transfers through the diversity-to-regional
// reduction (same-school displacement across type groups).
inline bool ref_stable_hrq(const HrqInstance& inst, const Matching& m) {
  auto region_rank = [&](const RegionSpec& region,
                         const Contract& y) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < region.priority.size(); ++i)
      if (region.priority[i] == y) return i;
    return std::nullopt;
  };
  for (const auto& [did, doctor] : inst.doctors) {
    std::optional<Id> current;
    for (const Contract& y : m.pairs())
      if (y.agent == did) current = y.institution;
    auto current_rank =
        current ? ref_rank(doctor.prefs.ranked, *current) : std::nullopt;
    for (std::size_t pi = 0; pi < doctor.prefs.ranked.size(); ++pi) {
      if (current_rank && pi >= *current_rank) break;
      const Id& hid = doctor.prefs.ranked[pi];
      if (!ref_contract_exists(inst, did, hid)) continue;
      const Contract mine{did, hid};

      // Everyone this pair may displace, with their own contracts.
      std::vector<Contract> displaceable;
      for (const Contract& y : m.pairs()) {
        if (y.agent == did) continue;
        bool ok;
        if (y.institution == hid) {
          const auto& priority = inst.hospitals.at(hid).priority.ranked;
          auto my_rank = ref_rank(priority, did);
          auto other_rank = ref_rank(priority, y.agent);
          ok = my_rank && other_rank && *my_rank < *other_rank;
          for (const RegionSpec& region : inst.regions) {
            if (!ok || !region.hospitals.count(hid)) continue;
            auto a = region_rank(region, mine);
            auto b = region_rank(region, y);
            if (!a || !b || *a > *b) ok = false;
          }
        } else {
          bool shares = false;
          ok = true;
          for (const RegionSpec& region : inst.regions) {
            if (!region.hospitals.count(hid) ||
                !region.hospitals.count(y.institution))
              continue;
            shares = true;
            auto a = region_rank(region, mine);
            auto b = region_rank(region, y);
            if (!a || !b || *a > *b) ok = false;
          }
          ok = ok && shares;
        }
        if (ok) displaceable.push_back(y);
      }

      for (std::size_t mask = 0; mask < (1u << displaceable.size()); ++mask) {
        Matching candidate = m;
        for (std::size_t b = 0; b < displaceable.size(); ++b)
          if (mask & (1u << b)) candidate.erase(displaceable[b]);
        if (current) candidate.erase({did, *current});
        candidate.insert(mine);
        if (ref_feasible_hrq(inst, candidate)) return false;
      }
    }
  }
  return true;
}

// Every outcome assigning each student one mutually acceptable school or
// nothing (the candidate space the equivalence suites quantify over).
inline std::vector<Matching> all_candidate_outcomes(const ScdcInstance& inst) {
  std::vector<Id> students;
  std::vector<std::vector<std::optional<Id>>> options;
  for (const auto& [sid, student] : inst.students) {
    students.push_back(sid);
    std::vector<std::optional<Id>> opts = {std::nullopt};
    for (const Id& cid : student.prefs.ranked)
      if (ref_contract_exists(inst, sid, cid)) opts.emplace_back(cid);
    options.push_back(std::move(opts));
  }
  std::vector<Matching> out;
  std::vector<std::size_t> pick(students.size(), 0);
  while (true) {
    std::vector<Contract> pairs;
    for (std::size_t i = 0; i < students.size(); ++i)
      if (options[i][pick[i]]) pairs.push_back({students[i], *options[i][pick[i]]});
    out.push_back(Matching(std::move(pairs)));
    std::size_t i = 0;
    while (i < students.size() && ++pick[i] == options[i].size())
      pick[i++] = 0;
    if (i == students.size()) break;
  }
  return out;
}

inline std::vector<Matching> all_candidate_outcomes(const HrqInstance& inst) {
  std::vector<Id> doctors;
  std::vector<std::vector<std::optional<Id>>> options;
  for (const auto& [did, doctor] : inst.doctors) {
    doctors.push_back(did);
    std::vector<std::optional<Id>> opts = {std::nullopt};
    for (const Id& hid : doctor.prefs.ranked)
      if (ref_contract_exists(inst, did, hid)) opts.emplace_back(hid);
    options.push_back(std::move(opts));
  }
  std::vector<Matching> out;
  std::vector<std::size_t> pick(doctors.size(), 0);
  while (true) {
    std::vector<Contract> pairs;
    for (std::size_t i = 0; i < doctors.size(); ++i)
      if (options[i][pick[i]]) pairs.push_back({doctors[i], *options[i][pick[i]]});
    out.push_back(Matching(std::move(pairs)));
    std::size_t i = 0;
    while (i < doctors.size() && ++pick[i] == options[i].size())
      pick[i++] = 0;
    if (i == doctors.size()) break;
  }
  return out;
}

// The classical hospital-residents blocking condition (no distributional
// constraints): the pair blocks iff the school has slack or some matched
// student ranks lower; witnesses displace the single lowest-priority one.
struct ClassicalWitness {
  Id agent;
  Id institution;
  std::vector<Id> displaced;
};

inline std::vector<ClassicalWitness> classical_blocking_pairs_scdc(
    const ScdcInstance& inst, const Matching& m) {
  std::vector<ClassicalWitness> out;
  for (const auto& [sid, student] : inst.students) {
    std::optional<Id> current;
    for (const Contract& x : m.pairs())
      if (x.agent == sid) current = x.institution;
    auto current_rank =
        current ? ref_rank(student.prefs.ranked, *current) : std::nullopt;
    for (const auto& [cid, school] : inst.schools) {
      auto pref = ref_rank(student.prefs.ranked, cid);
      if (!pref || (current_rank && *pref >= *current_rank)) continue;
      if (!ref_contract_exists(inst, sid, cid)) continue;
      std::vector<Id> matched;
      for (const Contract& x : m.pairs())
        if (x.institution == cid) matched.push_back(x.agent);
      if (static_cast<int>(matched.size()) < school.capacity) {
        out.push_back({sid, cid, {}});
        continue;
      }
      auto my_rank = ref_rank(school.priority.ranked, sid);
      std::optional<Id> lowest;
      std::size_t lowest_rank = 0;
      for (const Id& other : matched) {
        auto r = ref_rank(school.priority.ranked, other);
        if (my_rank && r && *r > *my_rank && (!lowest || *r > lowest_rank)) {
          lowest = other;
          lowest_rank = *r;
        }
      }
      if (lowest) out.push_back({sid, cid, {*lowest}});
    }
  }
  return out;
}

// The min-to-max rewrite as prior work states it: complement regions over
// the original hospitals only, no null hospital. Kept test-only to
// reproduce the counterexample that motivates the null hospital.
inline HrqInstance naive_eliminate_min_quotas(const HrqInstance& inst) {
  HrqInstance out = inst;
  const int n_doctors = static_cast<int>(inst.doctors.size());
  std::vector<RegionSpec> regions;
  for (const RegionSpec& region : inst.regions) {
    RegionSpec kept = region;
    kept.min_quota = 0;
    regions.push_back(kept);
    RegionSpec complement;
    complement.id = region.id + "_hat";
    complement.min_quota = 0;
    complement.max_quota = n_doctors - region.min_quota;
    for (const auto& [hid, _] : inst.hospitals)
      if (!region.hospitals.count(hid)) complement.hospitals.insert(hid);
    for (const Contract& y : inst.contracts())
      if (complement.hospitals.count(y.institution))
        complement.priority.push_back(y);
    regions.push_back(std::move(complement));
  }
  out.regions = std::move(regions);
  return out;
}

// Brute-force (3,3)-set-cover decision: some <=budget subfamily covers U.
inline bool ref_set_cover_decision(const SetCoverInstance& sc) {
  const std::size_t n = sc.family.size();
  for (std::size_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<int>(__builtin_popcount(mask)) > sc.budget) continue;
    std::set<Id> covered;
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (1u << j))
        covered.insert(sc.family[j].begin(), sc.family[j].end());
    if (covered.size() == sc.universe.size()) return true;
  }
  return false;
}

inline bool ref_satisfies(const CnfFormula& f,
                          const std::vector<bool>& assignment) {
  for (const auto& clause : f.clauses) {
    bool ok = false;
    for (int lit : clause)
      if (assignment[std::abs(lit) - 1] == (lit > 0)) ok = true;
    if (!ok) return false;
  }
  return true;
}

inline std::optional<std::vector<bool>> ref_find_satisfying(
    const CnfFormula& f) {
  for (unsigned mask = 0; mask < (1u << f.num_variables); ++mask) {
    std::vector<bool> assignment;
    for (int v = 0; v < f.num_variables; ++v)
      assignment.push_back((mask >> v) & 1);
    if (ref_satisfies(f, assignment)) return assignment;
  }
  return std::nullopt;
}

// All 216 restricted formulas over three variables and four clauses in
// which every clause mentions each variable once: pick per variable which
// two clauses carry it positively. Every one of them is satisfiable.
inline std::vector<CnfFormula> all_three_var_formulas() {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) pairs.push_back({a, b});
  std::vector<CnfFormula> out;
  for (const auto& p1 : pairs)
    for (const auto& p2 : pairs)
      for (const auto& p3 : pairs) {
        CnfFormula f;
        f.num_variables = 3;
        std::vector<std::pair<int, int>> positive = {p1, p2, p3};
        for (int clause = 0; clause < 4; ++clause) {
          std::array<int, 3> literals{};
          for (int v = 0; v < 3; ++v) {
            bool pos = positive[v].first == clause || positive[v].second == clause;
            literals[v] = pos ? v + 1 : -(v + 1);
          }
          f.clauses.push_back(literals);
        }
        out.push_back(std::move(f));
      }
  return out;
}

// Unsatisfiable restricted formulas need a repeated literal inside a
// clause: (x v x v b) & (-x v -x v b) force b, the mirrored pair forces
// -b. Permuting roles and flipping the centre yields six distinct ones.
inline std::vector<CnfFormula> unsat_three_var_formulas() {
  std::vector<CnfFormula> out;
  for (int centre = 1; centre <= 3; ++centre)
    for (int sign : {1, -1}) {
      int x = centre == 1 ? 2 : 1;
      int y = centre == 3 ? 2 : 3;
      CnfFormula f;
      f.num_variables = 3;
      f.clauses.push_back({x, x, sign * centre});
      f.clauses.push_back({-x, -x, sign * centre});
      f.clauses.push_back({y, y, -sign * centre});
      f.clauses.push_back({-y, -y, -sign * centre});
      out.push_back(std::move(f));
    }
  return out;
}

}  // namespace testsupport
