#include "matchdc/stability.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "matchdc/feasibility.hpp"
#include "internal/indexed.hpp"

namespace matchdc {
namespace internal {

IndexedScdc IndexedScdc::build(const ScdcInstance& inst) {
  IndexedScdc idx;
  idx.num_types = static_cast<int>(inst.num_types());
  for (const auto& [sid, _] : inst.students) {
    idx.student_index[sid] = static_cast<int>(idx.student_ids.size());
    idx.student_ids.push_back(sid);
  }
  for (const auto& [cid, _] : inst.schools) {
    idx.school_index[cid] = static_cast<int>(idx.school_ids.size());
    idx.school_ids.push_back(cid);
  }
  const int n = idx.n_students();
  const int m = idx.n_schools();

  idx.bits.assign(n, std::vector<int>(idx.num_types, 0));
  idx.prefs.assign(n, {});
  idx.pref_rank.assign(n, std::vector<int>(m, kNoRank));
  idx.capacity.assign(m, 0);
  idx.max_q.assign(m, std::vector<int>(idx.num_types, 0));
  idx.min_q.assign(m, std::vector<int>(idx.num_types, 0));
  idx.prio_rank.assign(m, std::vector<int>(n, kNoRank));
  idx.prio_list.assign(m, {});

  for (const auto& [sid, student] : inst.students) {
    int s = idx.student_index[sid];
    for (int t = 0; t < idx.num_types &&
                    t < static_cast<int>(student.type_vector.bits.size());
         ++t)
      idx.bits[s][t] = student.type_vector.bits[t];
    int rank = 0;
    for (const Id& cid : student.prefs.ranked) {
      auto it = idx.school_index.find(cid);
      if (it != idx.school_index.end()) {
        idx.prefs[s].push_back(it->second);
        idx.pref_rank[s][it->second] = rank;
      }
      ++rank;
    }
  }
  for (const auto& [cid, school] : inst.schools) {
    int c = idx.school_index[cid];
    idx.capacity[c] = school.capacity;
    for (int t = 0; t < idx.num_types; ++t) {
      if (t < static_cast<int>(school.max_quotas.size()))
        idx.max_q[c][t] = school.max_quotas[t];
      if (t < static_cast<int>(school.min_quotas.size()))
        idx.min_q[c][t] = school.min_quotas[t];
      if (idx.min_q[c][t] != 0) idx.all_min_zero = false;
    }
    int rank = 0;
    for (const Id& sid : school.priority.ranked) {
      auto it = idx.student_index.find(sid);
      if (it != idx.student_index.end()) {
        idx.prio_list[c].push_back(it->second);
        idx.prio_rank[c][it->second] = rank;
      }
      ++rank;
    }
  }
  return idx;
}

ScdcState ScdcState::empty(const IndexedScdc& idx) {
  ScdcState st;
  st.assignment.assign(idx.n_students(), -1);
  st.roster.assign(idx.n_schools(), {});
  st.counts.assign(idx.n_schools(), std::vector<int>(idx.num_types, 0));
  return st;
}

ScdcState ScdcState::from_matching(const IndexedScdc& idx, const Matching& m) {
  ScdcState st = empty(idx);
  for (const Contract& x : m.pairs())
    st.assign(idx, idx.student_index.at(x.agent),
              idx.school_index.at(x.institution));
  return st;
}

void ScdcState::assign(const IndexedScdc& idx, int s, int c) {
  assignment[s] = c;
  roster[c].push_back(s);
  for (int t = 0; t < idx.num_types; ++t) counts[c][t] += idx.bits[s][t];
}

void ScdcState::unassign(const IndexedScdc& idx, int s) {
  int c = assignment[s];
  if (c < 0) return;
  assignment[s] = -1;
  auto& r = roster[c];
  r.erase(std::find(r.begin(), r.end(), s));
  for (int t = 0; t < idx.num_types; ++t) counts[c][t] -= idx.bits[s][t];
}

Matching ScdcState::to_matching(const IndexedScdc& idx) const {
  std::vector<Contract> pairs;
  for (int s = 0; s < idx.n_students(); ++s)
    if (assignment[s] >= 0)
      pairs.push_back({idx.student_ids[s], idx.school_ids[assignment[s]]});
  return Matching(std::move(pairs));
}

IndexedHrq IndexedHrq::build(const HrqInstance& inst) {
  IndexedHrq idx;
  for (const auto& [did, _] : inst.doctors) {
    idx.doctor_index[did] = static_cast<int>(idx.doctor_ids.size());
    idx.doctor_ids.push_back(did);
  }
  for (const auto& [hid, _] : inst.hospitals) {
    idx.hospital_index[hid] = static_cast<int>(idx.hospital_ids.size());
    idx.hospital_ids.push_back(hid);
  }
  const int n = idx.n_doctors();
  const int m = idx.n_hospitals();

  idx.prefs.assign(n, {});
  idx.pref_rank.assign(n, std::vector<int>(m, kNoRank));
  idx.capacity.assign(m, 0);
  idx.prio_rank.assign(m, std::vector<int>(n, kNoRank));
  idx.prio_list.assign(m, {});
  idx.regions_of.assign(m, {});

  for (const auto& [did, doctor] : inst.doctors) {
    int d = idx.doctor_index[did];
    int rank = 0;
    for (const Id& hid : doctor.prefs.ranked) {
      auto it = idx.hospital_index.find(hid);
      if (it != idx.hospital_index.end()) {
        idx.prefs[d].push_back(it->second);
        idx.pref_rank[d][it->second] = rank;
      }
      ++rank;
    }
  }
  for (const auto& [hid, hospital] : inst.hospitals) {
    int h = idx.hospital_index[hid];
    idx.capacity[h] = hospital.capacity;
    int rank = 0;
    for (const Id& did : hospital.priority.ranked) {
      auto it = idx.doctor_index.find(did);
      if (it != idx.doctor_index.end()) {
        idx.prio_list[h].push_back(it->second);
        idx.prio_rank[h][it->second] = rank;
      }
      ++rank;
    }
  }
  for (const RegionSpec& region : inst.regions) {
    IndexedRegion r;
    r.min = region.min_quota;
    r.max = region.max_quota;
    if (r.min != 0) idx.all_min_zero = false;
    r.contains.assign(m, 0);
    r.rank.assign(m, std::vector<int>(n, kNoRank));
    for (const Id& hid : region.hospitals) {
      auto it = idx.hospital_index.find(hid);
      if (it != idx.hospital_index.end()) {
        r.contains[it->second] = 1;
        r.hospital_list.push_back(it->second);
      }
    }
    int rank = 0;
    for (const Contract& y : region.priority) {
      auto d = idx.doctor_index.find(y.agent);
      auto h = idx.hospital_index.find(y.institution);
      if (d != idx.doctor_index.end() && h != idx.hospital_index.end())
        r.rank[h->second][d->second] = rank;
      ++rank;
    }
    int region_idx = static_cast<int>(idx.regions.size());
    for (int h : r.hospital_list) idx.regions_of[h].push_back(region_idx);
    idx.regions.push_back(std::move(r));
  }
  return idx;
}

HrqState HrqState::empty(const IndexedHrq& idx) {
  HrqState st;
  st.assignment.assign(idx.n_doctors(), -1);
  st.roster.assign(idx.n_hospitals(), {});
  st.region_count.assign(idx.regions.size(), 0);
  return st;
}

HrqState HrqState::from_matching(const IndexedHrq& idx, const Matching& m) {
  HrqState st = empty(idx);
  for (const Contract& y : m.pairs())
    st.assign(idx, idx.doctor_index.at(y.agent),
              idx.hospital_index.at(y.institution));
  return st;
}

void HrqState::assign(const IndexedHrq& idx, int d, int h) {
  assignment[d] = h;
  roster[h].push_back(d);
  for (int r : idx.regions_of[h]) ++region_count[r];
}

void HrqState::unassign(const IndexedHrq& idx, int d) {
  int h = assignment[d];
  if (h < 0) return;
  assignment[d] = -1;
  auto& r = roster[h];
  r.erase(std::find(r.begin(), r.end(), d));
  for (int ri : idx.regions_of[h]) --region_count[ri];
}

Matching HrqState::to_matching(const IndexedHrq& idx) const {
  std::vector<Contract> pairs;
  for (int d = 0; d < idx.n_doctors(); ++d)
    if (assignment[d] >= 0)
      pairs.push_back({idx.doctor_ids[d], idx.hospital_ids[assignment[d]]});
  return Matching(std::move(pairs));
}

bool scdc_swap_feasible(const IndexedScdc& idx, const ScdcState& st, int s,
                        int c, const std::vector<int>& removed_rows) {
  const int removed = static_cast<int>(removed_rows.size());
  if (static_cast<int>(st.roster[c].size()) - removed + 1 > idx.capacity[c])
    return false;
  for (int t = 0; t < idx.num_types; ++t) {
    int sum = st.counts[c][t] + idx.bits[s][t];
    for (int sr : removed_rows) sum -= idx.bits[sr][t];
    if (sum > idx.max_q[c][t] || sum < idx.min_q[c][t]) return false;
  }
  int old = st.assignment[s];
  if (old >= 0 && old != c) {
    // Leaving can only break the old school's minimum quotas.
    for (int t = 0; t < idx.num_types; ++t)
      if (st.counts[old][t] - idx.bits[s][t] < idx.min_q[old][t]) return false;
  }
  return true;
}

bool hrq_swap_feasible(const IndexedHrq& idx, const HrqState& st, int d, int h,
                       const std::vector<int>& removed_doctors) {
  int removed_at_h = 0;
  for (int other : removed_doctors)
    if (st.assignment[other] == h) ++removed_at_h;
  if (static_cast<int>(st.roster[h].size()) - removed_at_h + 1 >
      idx.capacity[h])
    return false;
  int old = st.assignment[d];
  for (std::size_t r = 0; r < idx.regions.size(); ++r) {
    const IndexedRegion& region = idx.regions[r];
    int delta = 0;
    if (region.contains[h]) delta += 1;
    if (old >= 0 && region.contains[old]) delta -= 1;
    for (int other : removed_doctors)
      if (region.contains[st.assignment[other]]) delta -= 1;
    if (delta == 0) continue;
    int count = st.region_count[r] + delta;
    if (count > region.max || count < region.min) return false;
  }
  return true;
}

std::vector<int> hrq_displacement_candidates(const IndexedHrq& idx,
                                             const HrqState& st, int d,
                                             int h) {
  std::vector<int> eligible;
  for (int other = 0; other < idx.n_doctors(); ++other) {
    if (other == d) continue;
    int their_h = st.assignment[other];
    if (their_h < 0) continue;
    bool lower_everywhere = true;
    if (their_h == h) {
      if (idx.prio_rank[h][other] <= idx.prio_rank[h][d]) continue;
      for (int r : idx.regions_of[h]) {
        const IndexedRegion& region = idx.regions[r];
        if (region.rank[h][d] == kNoRank ||
            region.rank[h][d] >= region.rank[h][other]) {
          lower_everywhere = false;
          break;
        }
      }
    } else {
      // A doctor elsewhere can only be displaced through a region that
      // ranks both contracts, and every such region must agree.
      bool comparable_somewhere = false;
      for (int r : idx.regions_of[h]) {
        const IndexedRegion& region = idx.regions[r];
        if (!region.contains[their_h]) continue;
        comparable_somewhere = true;
        if (region.rank[h][d] == kNoRank ||
            region.rank[h][d] >= region.rank[their_h][other]) {
          lower_everywhere = false;
          break;
        }
      }
      if (!comparable_somewhere) continue;
    }
    if (lower_everywhere) eligible.push_back(other);
  }
  // Lowest priority first: order by the worst rank any shared ordering
  // assigns them, ties by id, so reported witnesses are deterministic.
  auto worst_rank = [&](int other) {
    int their_h = st.assignment[other];
    int worst = -1;
    if (their_h == h) worst = idx.prio_rank[h][other];
    for (int r : idx.regions_of[h]) {
      const IndexedRegion& region = idx.regions[r];
      if (region.contains[their_h])
        worst = std::max(worst, region.rank[their_h][other]);
    }
    return worst;
  };
  std::sort(eligible.begin(), eligible.end(), [&](int a, int b) {
    int wa = worst_rank(a), wb = worst_rank(b);
    if (wa != wb) return wa > wb;
    return idx.doctor_ids[a] < idx.doctor_ids[b];
  });
  return eligible;
}

namespace {

constexpr std::size_t kMaxDisplacementSetSize = 24;

void ensure_enumerable(std::size_t eligible, const Id& institution) {
  if (eligible > kMaxDisplacementSetSize) {
    std::ostringstream os;
    os << "displacement search at '" << institution << "' would enumerate 2^"
       << eligible << " subsets; instance is beyond desk scale";
    throw std::runtime_error(os.str());
  }
}

// Minimal-cardinality subset of `eligible` whose removal lets the swap
// through, or nullopt. `eligible` must be sorted lowest priority first so
// that the combination order realizes the documented tie-breaking.
template <typename Feasible>
std::optional<std::vector<int>> min_displacement(
    const std::vector<int>& eligible, bool nonempty_only, bool can_fast_skip,
    Feasible&& feasible) {
  if (can_fast_skip && !feasible(eligible)) return std::nullopt;
  const std::size_t e = eligible.size();
  std::vector<int> subset;
  for (std::size_t m = nonempty_only ? 1 : 0; m <= e; ++m) {
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    while (true) {
      subset.clear();
      for (std::size_t i : pick) subset.push_back(eligible[i]);
      if (feasible(subset)) return subset;
      // next combination
      std::size_t i = m;
      while (i > 0 && pick[i - 1] == e - m + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

struct ScdcWitnessQuery {
  bool nonempty_only = false;
  const std::vector<int>* ml_rank = nullptr;  // [s], kNoRank when absent
};

std::vector<BlockingWitness> scdc_witnesses(const IndexedScdc& idx,
                                            const ScdcState& st,
                                            const ScdcWitnessQuery& query) {
  std::vector<BlockingWitness> out;
  for (int s = 0; s < idx.n_students(); ++s) {
    int cur = st.assignment[s];
    int cur_rank = cur < 0 ? kNoRank : idx.pref_rank[s][cur];
    for (int c = 0; c < idx.n_schools(); ++c) {
      if (idx.pref_rank[s][c] >= cur_rank || idx.prio_rank[c][s] == kNoRank)
        continue;
      std::vector<int> eligible;
      for (int other : st.roster[c])
        if (idx.prio_rank[c][other] > idx.prio_rank[c][s] &&
            (!query.ml_rank ||
             (*query.ml_rank)[other] > (*query.ml_rank)[s]))
          eligible.push_back(other);
      std::sort(eligible.begin(), eligible.end(), [&](int a, int b) {
        return idx.prio_rank[c][a] > idx.prio_rank[c][b];
      });
      ensure_enumerable(eligible.size(), idx.school_ids[c]);
      auto displaced = min_displacement(
          eligible, query.nonempty_only, idx.all_min_zero,
          [&](const std::vector<int>& removed) {
            return scdc_swap_feasible(idx, st, s, c, removed);
          });
      if (!displaced) continue;
      BlockingWitness w;
      w.agent = idx.student_ids[s];
      w.institution = idx.school_ids[c];
      for (int other : *displaced) w.displaced.push_back(idx.student_ids[other]);
      std::sort(w.displaced.begin(), w.displaced.end());
      w.kind = w.displaced.empty() ? BlockingWitness::Kind::Wasteful
                                   : BlockingWitness::Kind::JustifiedEnvy;
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<BlockingWitness> hrq_witnesses(const IndexedHrq& idx,
                                           const HrqState& st) {
  std::vector<BlockingWitness> out;
  for (int d = 0; d < idx.n_doctors(); ++d) {
    int cur = st.assignment[d];
    int cur_rank = cur < 0 ? kNoRank : idx.pref_rank[d][cur];
    for (int h = 0; h < idx.n_hospitals(); ++h) {
      if (idx.pref_rank[d][h] >= cur_rank || idx.prio_rank[h][d] == kNoRank)
        continue;
      auto eligible = hrq_displacement_candidates(idx, st, d, h);
      ensure_enumerable(eligible.size(), idx.hospital_ids[h]);
      auto displaced = min_displacement(
          eligible, false, idx.all_min_zero,
          [&](const std::vector<int>& removed) {
            return hrq_swap_feasible(idx, st, d, h, removed);
          });
      if (!displaced) continue;
      BlockingWitness w;
      w.agent = idx.doctor_ids[d];
      w.institution = idx.hospital_ids[h];
      for (int other : *displaced) w.displaced.push_back(idx.doctor_ids[other]);
      std::sort(w.displaced.begin(), w.displaced.end());
      w.kind = w.displaced.empty() ? BlockingWitness::Kind::Wasteful
                                   : BlockingWitness::Kind::JustifiedEnvy;
      out.push_back(std::move(w));
    }
  }
  return out;
}

void require_feasible(const FeasibilityVerdict& verdict, const char* what) {
  if (verdict.feasible) return;
  std::ostringstream os;
  os << what << " requires a feasible outcome; first violation: "
     << describe(verdict.violations.front());
  throw std::invalid_argument(os.str());
}

}  // namespace

bool exists_blocking_scdc(const IndexedScdc& idx, const ScdcState& st) {
  for (int s = 0; s < idx.n_students(); ++s) {
    int cur = st.assignment[s];
    int cur_rank = cur < 0 ? kNoRank : idx.pref_rank[s][cur];
    for (int c : idx.prefs[s]) {
      if (idx.pref_rank[s][c] >= cur_rank || idx.prio_rank[c][s] == kNoRank)
        continue;
      std::vector<int> eligible;
      for (int other : st.roster[c])
        if (idx.prio_rank[c][other] > idx.prio_rank[c][s])
          eligible.push_back(other);
      if (idx.all_min_zero) {
        // Removing every lower-priority student is always enough here.
        if (scdc_swap_feasible(idx, st, s, c, eligible)) return true;
        continue;
      }
      std::sort(eligible.begin(), eligible.end(), [&](int a, int b) {
        return idx.prio_rank[c][a] > idx.prio_rank[c][b];
      });
      ensure_enumerable(eligible.size(), idx.school_ids[c]);
      if (min_displacement(eligible, false, false,
                           [&](const std::vector<int>& removed) {
                             return scdc_swap_feasible(idx, st, s, c, removed);
                           }))
        return true;
    }
  }
  return false;
}

bool exists_blocking_hrq(const IndexedHrq& idx, const HrqState& st) {
  for (int d = 0; d < idx.n_doctors(); ++d) {
    int cur = st.assignment[d];
    int cur_rank = cur < 0 ? kNoRank : idx.pref_rank[d][cur];
    for (int h : idx.prefs[d]) {
      if (idx.pref_rank[d][h] >= cur_rank || idx.prio_rank[h][d] == kNoRank)
        continue;
      auto eligible = hrq_displacement_candidates(idx, st, d, h);
      if (idx.all_min_zero) {
        // Without minimum quotas removals only loosen the constraints, so
        // displacing every eligible doctor decides existence.
        if (hrq_swap_feasible(idx, st, d, h, eligible)) return true;
        continue;
      }
      ensure_enumerable(eligible.size(), idx.hospital_ids[h]);
      if (min_displacement(eligible, false, false,
                           [&](const std::vector<int>& removed) {
                             return hrq_swap_feasible(idx, st, d, h, removed);
                           }))
        return true;
    }
  }
  return false;
}

}  // namespace internal

bool is_individually_rational(const ScdcInstance& inst, const Matching& m) {
  for (const Contract& x : m.pairs())
    if (!inst.has_contract(x.agent, x.institution)) return false;
  return true;
}

bool is_individually_rational(const HrqInstance& inst, const Matching& m) {
  for (const Contract& y : m.pairs())
    if (!inst.has_contract(y.agent, y.institution)) return false;
  return true;
}

std::vector<BlockingWitness> find_blocking_pairs_scdc(const ScdcInstance& inst,
                                                      const Matching& outcome) {
  internal::require_feasible(check_feasible_scdc(inst, outcome),
                             "find_blocking_pairs_scdc");
  auto idx = internal::IndexedScdc::build(inst);
  auto st = internal::ScdcState::from_matching(idx, outcome);
  return internal::scdc_witnesses(idx, st, {});
}

std::vector<BlockingWitness> find_blocking_pairs_hrq(const HrqInstance& inst,
                                                     const Matching& outcome) {
  internal::require_feasible(check_feasible_hrq(inst, outcome),
                             "find_blocking_pairs_hrq");
  auto idx = internal::IndexedHrq::build(inst);
  auto st = internal::HrqState::from_matching(idx, outcome);
  return internal::hrq_witnesses(idx, st);
}

bool is_stable_scdc(const ScdcInstance& inst, const Matching& outcome) {
  internal::require_feasible(check_feasible_scdc(inst, outcome),
                             "is_stable_scdc");
  if (!is_individually_rational(inst, outcome)) return false;
  auto idx = internal::IndexedScdc::build(inst);
  auto st = internal::ScdcState::from_matching(idx, outcome);
  return !internal::exists_blocking_scdc(idx, st);
}

bool is_stable_hrq(const HrqInstance& inst, const Matching& outcome) {
  internal::require_feasible(check_feasible_hrq(inst, outcome),
                             "is_stable_hrq");
  if (!is_individually_rational(inst, outcome)) return false;
  auto idx = internal::IndexedHrq::build(inst);
  auto st = internal::HrqState::from_matching(idx, outcome);
  return !internal::exists_blocking_hrq(idx, st);
}

std::vector<BlockingWitness> check_fair_by_master_list(
    const ScdcInstance& inst, const Matching& outcome, const MasterList& ml) {
  internal::require_feasible(check_feasible_scdc(inst, outcome),
                             "check_fair_by_master_list");
  auto idx = internal::IndexedScdc::build(inst);
  std::vector<int> ml_rank(idx.n_students(), internal::kNoRank);
  for (std::size_t i = 0; i < ml.order.size(); ++i) {
    auto it = idx.student_index.find(ml.order[i]);
    if (it != idx.student_index.end()) ml_rank[it->second] =
        static_cast<int>(i);
  }
  for (int s = 0; s < idx.n_students(); ++s)
    if (ml_rank[s] == internal::kNoRank)
      throw std::invalid_argument("master list does not cover student '" +
                                  idx.student_ids[s] + "'");
  auto st = internal::ScdcState::from_matching(idx, outcome);
  internal::ScdcWitnessQuery query;
  query.nonempty_only = true;
  query.ml_rank = &ml_rank;
  return internal::scdc_witnesses(idx, st, query);
}

}  // namespace matchdc
