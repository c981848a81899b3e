#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "matchdc/model.hpp"

namespace matchdc {

// Everything a school maps to under the diversity-to-regional reduction.
struct SchoolImage {
  Id school_region;
  std::vector<Id> type_regions;        // index j <-> type j
  std::map<std::string, Id> hospitals;  // distinct type-vector key -> id

  bool operator==(const SchoolImage&) const = default;
};

// Bidirectional correspondence produced by reduce_scdc_to_hrq.
struct ReductionMap {
  std::map<Id, Id> student_to_doctor;
  std::map<Id, Id> doctor_to_student;
  std::map<Contract, Contract> contract_to_induced;
  std::map<Contract, Contract> contract_from_induced;
  std::map<Id, SchoolImage> schools;

  bool operator==(const ReductionMap&) const = default;
};

struct ScdcToHrqResult {
  HrqInstance instance;
  ReductionMap map;
};

// Builds the regional-quota instance induced by a diversity-constraint
// instance: one doctor per student; per school one hospital for every
// distinct type vector present among the students (capacity equal to the
// school's); per school a region over all its hospitals capped by the
// school capacity plus one region per type carrying that type's quota
// bounds. Hospital and region priorities are the school priority
// restricted to their contracts. Distinct type vectors are ordered by
// their bit strings; ids are "h_<school>_<bits>", "r_<school>" and
// "r_<school>_<typeindex>". Throws on invalid input.
ScdcToHrqResult reduce_scdc_to_hrq(const ScdcInstance& inst);

// Maps a matching through the contract bijection (and back).
Matching lift_matching(const ReductionMap& map, const Matching& outcome);
Matching restore_matching(const ReductionMap& map, const Matching& outcome);

struct MinQuotaFreeResult {
  HrqInstance instance;
  Id null_hospital;
};

// Rewrites regional minimum quotas as maximum quotas: adds a null
// hospital of capacity |D| appended to every doctor's list, keeps each
// region with its minimum dropped, and adds a complement region over all
// other hospitals (null included) capped at |D| minus the old minimum.
// Throws when some minimum quota exceeds |D| or the input is invalid.
MinQuotaFreeResult eliminate_min_quotas(const HrqInstance& inst);

// Completes an outcome of the transformed instance by sending every
// unmatched doctor to the null hospital, restoring the doctor counting
// the min-to-max rewrite relies on.
Matching augment_with_null(const HrqInstance& transformed,
                           const Matching& outcome, const Id& null_hospital);

// (3,3)-Set-Cover: every element occurs in at most three family sets and
// every family set has at most three elements.
struct SetCoverInstance {
  std::vector<Id> universe;
  std::vector<std::set<Id>> family;
  int budget = 0;

  bool operator==(const SetCoverInstance&) const = default;
};

ValidationReport validate_set_cover(const SetCoverInstance& sc);

// One school of capacity k with minimum quota 1 for a type per element;
// one student per family set, typed by membership. A feasible outcome
// exists iff the set-cover instance is a yes-instance.
ScdcInstance gadget_from_set_cover(const SetCoverInstance& sc);

// Family indices of the cover read off a feasible gadget outcome.
// Throws when the outcome is infeasible for the gadget.
std::vector<std::size_t> set_cover_from_matching(const SetCoverInstance& sc,
                                                 const ScdcInstance& gadget,
                                                 const Matching& outcome);

// 3-SAT restricted so that every literal occurs exactly twice; clauses in
// DIMACS signed-literal form (variables 1..num_variables).
struct CnfFormula {
  int num_variables = 0;
  std::vector<std::array<int, 3>> clauses;

  bool operator==(const CnfFormula&) const = default;
};

ValidationReport validate_restricted_3sat(const CnfFormula& f);

bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment);

// Deterministic names used inside the 3-SAT gadget; shared between the
// construction, the outcome builder, and tests.
struct ThreeSatNames {
  int var_width = 1;
  int clause_width = 1;

  explicit ThreeSatNames(const CnfFormula& f);

  std::string var_tag(int var) const;      // "u01"
  std::string clause_school(int clause) const;  // "o1", 1-based

  std::string student_s(int var, int k) const;   // k in 1..6
  std::string student_t(int var, int k) const;   // k in 1..2
  std::string student_f(int var, int k) const;   // k in 1..2
  std::string student_alpha(int var, int k, int m) const;  // k 1..4, m 1..3

  std::string school_c(int var, int k) const;    // k in 1..2
  std::string school_ct(int var, int k) const;   // k in 1..2
  std::string school_cf(int var, int k) const;   // k in 1..2
  std::string school_beta(int var, int k, int m) const;    // k 1..4, m 1..3
};

// 1-based clause index of the occurrence-th appearance of the literal
// (var, positive), occurrence in {1, 2}. Throws when absent.
int clause_of_occurrence(const CnfFormula& f, int var, bool positive,
                         int occurrence);

// Per variable 22 students and 18 schools with the fixed type vectors,
// two-entry quota patterns and short priority lists of the hardness
// construction, plus one capacity-2 school per clause; no minimum quotas
// anywhere. A stable outcome exists iff the formula is satisfiable.
ScdcInstance gadget_from_3sat(const CnfFormula& f);

// The canonical stable outcome for a satisfying assignment: per variable
// the true-pattern or false-pattern contract set (false-literal
// occurrence students end up at their clause schools). For an assignment
// that does not satisfy the formula the result overfills some clause
// school and is infeasible.
Matching outcome_from_assignment(const CnfFormula& f,
                                 const ScdcInstance& gadget,
                                 const std::vector<bool>& assignment);

// Reorders every region priority to master-list order (ties within one
// doctor broken by hospital id). Throws when the list misses a doctor.
void apply_master_list_to_region_priorities(HrqInstance& inst,
                                            const MasterList& ml);

}  // namespace matchdc
