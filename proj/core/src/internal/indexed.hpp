#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "matchdc/model.hpp"

// Integer-indexed views of instances plus the shared blocking-pair
// machinery. Internal to the library: stability checks and the
// exhaustive solvers both run on these.

namespace matchdc::internal {

inline constexpr int kNoRank = std::numeric_limits<int>::max();

struct IndexedScdc {
  std::vector<Id> student_ids;  // map order, i.e. sorted
  std::vector<Id> school_ids;
  std::map<Id, int> student_index;
  std::map<Id, int> school_index;
  int num_types = 0;

  std::vector<std::vector<int>> bits;       // [s][t]
  std::vector<std::vector<int>> prefs;      // [s] school idx, pref order
  std::vector<std::vector<int>> pref_rank;  // [s][c], kNoRank if unranked
  std::vector<int> capacity;                // [c]
  std::vector<std::vector<int>> max_q;      // [c][t]
  std::vector<std::vector<int>> min_q;      // [c][t]
  std::vector<std::vector<int>> prio_rank;  // [c][s], kNoRank if unranked
  std::vector<std::vector<int>> prio_list;  // [c] student idx, priority order
  bool all_min_zero = true;

  static IndexedScdc build(const ScdcInstance& inst);

  int n_students() const { return static_cast<int>(student_ids.size()); }
  int n_schools() const { return static_cast<int>(school_ids.size()); }
  bool has_contract(int s, int c) const {
    return pref_rank[s][c] != kNoRank && prio_rank[c][s] != kNoRank;
  }
};

// Mutable matching state over an IndexedScdc.
struct ScdcState {
  std::vector<int> assignment;            // [s] school idx or -1
  std::vector<std::vector<int>> roster;   // [c] student idxs
  std::vector<std::vector<int>> counts;   // [c][t]

  static ScdcState empty(const IndexedScdc& idx);
  // Requires a feasible outcome (unique assignments, known contracts).
  static ScdcState from_matching(const IndexedScdc& idx, const Matching& m);

  void assign(const IndexedScdc& idx, int s, int c);
  void unassign(const IndexedScdc& idx, int s);
  Matching to_matching(const IndexedScdc& idx) const;
};

struct IndexedRegion {
  int min = 0;
  int max = 0;
  std::vector<char> contains;        // [h]
  std::vector<std::vector<int>> rank;  // [h][d], kNoRank if unranked
  std::vector<int> hospital_list;
};

struct IndexedHrq {
  std::vector<Id> doctor_ids;
  std::vector<Id> hospital_ids;
  std::map<Id, int> doctor_index;
  std::map<Id, int> hospital_index;

  std::vector<std::vector<int>> prefs;      // [d] hospital idx, pref order
  std::vector<std::vector<int>> pref_rank;  // [d][h]
  std::vector<int> capacity;                // [h]
  std::vector<std::vector<int>> prio_rank;  // [h][d]
  std::vector<std::vector<int>> prio_list;  // [h] doctor idx, priority order
  std::vector<IndexedRegion> regions;
  std::vector<std::vector<int>> regions_of;  // [h] region indices
  bool all_min_zero = true;

  static IndexedHrq build(const HrqInstance& inst);

  int n_doctors() const { return static_cast<int>(doctor_ids.size()); }
  int n_hospitals() const { return static_cast<int>(hospital_ids.size()); }
  bool has_contract(int d, int h) const {
    return pref_rank[d][h] != kNoRank && prio_rank[h][d] != kNoRank;
  }
};

struct HrqState {
  std::vector<int> assignment;           // [d] hospital idx or -1
  std::vector<std::vector<int>> roster;  // [h] doctor idxs
  std::vector<int> region_count;         // [r]

  static HrqState empty(const IndexedHrq& idx);
  static HrqState from_matching(const IndexedHrq& idx, const Matching& m);

  void assign(const IndexedHrq& idx, int d, int h);
  void unassign(const IndexedHrq& idx, int d);
  Matching to_matching(const IndexedHrq& idx) const;
};

// Can student s move into school c once `removed` (indices into the
// current roster of c, all distinct) leave? Checks capacity and both
// quota bounds at c, and the min quotas of the school s leaves.
bool scdc_swap_feasible(const IndexedScdc& idx, const ScdcState& st, int s,
                        int c, const std::vector<int>& removed_rows);

// Same for doctor d moving into hospital h. `removed` holds doctor
// indices; each leaves their own hospital, which may differ from h when a
// region ties the two hospitals together. Checks capacity at h and the
// quota bounds of every region touched by the swap.
bool hrq_swap_feasible(const IndexedHrq& idx, const HrqState& st, int d, int h,
                       const std::vector<int>& removed_doctors);

// Doctors the pair (d, h) may displace: those matched to h and ranked
// below (d, h) at h and in every region containing h, plus doctors at
// other hospitals of regions containing h whose contracts rank below
// (d, h) in every region containing both hospitals. Displacing across
// hospitals is what lets the regional model mirror same-school
// displacement between students of different types.
std::vector<int> hrq_displacement_candidates(const IndexedHrq& idx,
                                             const HrqState& st, int d, int h);

// Does any blocking pair exist for the (complete, feasible) state? Uses
// the remove-all-lower-priority shortcut when the instance has no minimum
// quotas, full displacement-subset search otherwise.
bool exists_blocking_scdc(const IndexedScdc& idx, const ScdcState& st);
bool exists_blocking_hrq(const IndexedHrq& idx, const HrqState& st);

}  // namespace matchdc::internal
