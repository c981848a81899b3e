#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

// Core data model for two-sided matching under distributional constraints:
// school choice with per-type quotas (SCDC) and hospital-doctor matching
// with regional quotas (HRQ). All types are plain immutable-after-build
// values; every operation on them is a pure function.

namespace matchdc {

using Id = std::string;

// An agent-institution pair: (student, school) or (doctor, hospital).
struct Contract {
  Id agent;
  Id institution;

  auto operator<=>(const Contract&) const = default;
};

// 0/1 membership flags, one entry per type in the owning instance's
// type space (index j <-> type_names[j]).
struct TypeVector {
  std::vector<int> bits;

  // Bits concatenated as a string ("10", "011", ...), type 0 first.
  // Used as a deterministic key for grouping distinct type vectors.
  std::string key() const;

  auto operator<=>(const TypeVector&) const = default;
};

// Strict ranking over counterpart ids, most preferred first. Anything
// absent from the list is unacceptable (ranked below staying unmatched).
struct PreferenceOrder {
  std::vector<Id> ranked;

  bool contains(const Id& id) const;
  std::optional<std::size_t> rank_of(const Id& id) const;
  // True when a is ranked strictly above b; unranked ids never win.
  bool prefers(const Id& a, const Id& b) const;

  auto operator<=>(const PreferenceOrder&) const = default;
};

struct Student {
  TypeVector type_vector;
  PreferenceOrder prefs;  // over school ids

  auto operator<=>(const Student&) const = default;
};

struct School {
  int capacity = 0;
  std::vector<int> max_quotas;  // per type, indexed like type_names
  std::vector<int> min_quotas;
  PreferenceOrder priority;  // over student ids

  auto operator<=>(const School&) const = default;
};

// School choice with diversity constraints. A contract (s, c) exists iff
// c appears in s's preference list and s appears in c's priority list;
// one-sided listings are validation errors.
struct ScdcInstance {
  std::vector<std::string> type_names;
  std::map<Id, Student> students;
  std::map<Id, School> schools;

  std::size_t num_types() const { return type_names.size(); }
  bool has_contract(const Id& student, const Id& school) const;
  // All contracts, sorted by (student, school).
  std::vector<Contract> contracts() const;

  bool operator==(const ScdcInstance&) const = default;
};

struct Doctor {
  PreferenceOrder prefs;  // over hospital ids

  auto operator<=>(const Doctor&) const = default;
};

struct Hospital {
  int capacity = 0;
  PreferenceOrder priority;  // over doctor ids

  auto operator<=>(const Hospital&) const = default;
};

// A region is a subset of hospitals with doctor-count quotas and a strict
// priority over the contracts of its hospitals.
struct RegionSpec {
  Id id;
  std::set<Id> hospitals;
  int min_quota = 0;
  int max_quota = 0;
  std::vector<Contract> priority;  // covers exactly the region's contracts

  auto operator<=>(const RegionSpec&) const = default;
};

// Hospital-doctor matching with regional quotas. Regions may overlap.
struct HrqInstance {
  std::map<Id, Doctor> doctors;
  std::map<Id, Hospital> hospitals;
  std::vector<RegionSpec> regions;

  bool has_contract(const Id& doctor, const Id& hospital) const;
  std::vector<Contract> contracts() const;
  // Indices into `regions` of every region containing the hospital.
  std::vector<std::size_t> regions_containing(const Id& hospital) const;

  bool operator==(const HrqInstance&) const = default;
};

// A set of contracts, kept sorted and deduplicated. May reference ids
// unknown to an instance or assign an agent twice; the feasibility
// checker reports such defects instead of this type rejecting them.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Contract> pairs);

  const std::vector<Contract>& pairs() const { return pairs_; }
  bool contains(const Contract& x) const;
  void insert(const Contract& x);
  void erase(const Contract& x);
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  // The institution the agent is matched to, if exactly one pair holds it.
  // Multiple assignments yield the first in institution order.
  std::optional<Id> assignment_of(const Id& agent) const;
  std::vector<Id> agents_at(const Id& institution) const;

  bool operator==(const Matching&) const = default;
  auto operator<=>(const Matching&) const = default;

 private:
  std::vector<Contract> pairs_;
};

// Strict total order over all agents of an instance, best first.
struct MasterList {
  std::vector<Id> order;

  std::optional<std::size_t> rank_of(const Id& id) const;

  bool operator==(const MasterList&) const = default;
};

struct ValidationReport {
  std::vector<std::string> errors;

  bool ok() const { return errors.empty(); }
};

// Capacities and quotas above this bound are validation errors; the
// exhaustive solvers rely on instances staying desk-scale.
inline constexpr int kMaxQuota = 1'000'000;

ValidationReport validate_scdc(const ScdcInstance& inst);
ValidationReport validate_hrq(const HrqInstance& inst);

// True iff the regions' hospital sets are pairwise disjoint and their
// union equals `hospitals`.
bool is_partition(const std::vector<RegionSpec>& regions,
                  const std::set<Id>& hospitals);

// True iff the union equals `hospitals` and every pair of regions is
// disjoint or nested (a laminar family).
bool is_hierarchy(const std::vector<RegionSpec>& regions,
                  const std::set<Id>& hospitals);

}  // namespace matchdc
