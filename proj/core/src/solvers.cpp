#include "matchdc/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "matchdc/reductions.hpp"
#include "internal/indexed.hpp"

namespace matchdc {

namespace {

using internal::IndexedHrq;
using internal::IndexedScdc;
using internal::kNoRank;

void require_valid(const ValidationReport& report, const char* what) {
  if (report.ok()) return;
  std::ostringstream os;
  os << what << ": input does not validate: " << report.errors.front();
  throw std::invalid_argument(os.str());
}

struct BudgetTracker {
  std::uint64_t max_nodes;
  double max_seconds;
  std::chrono::steady_clock::time_point start;
  std::uint64_t nodes = 0;
  bool exceeded = false;

  explicit BudgetTracker(const SearchBudget& budget)
      : max_nodes(budget.max_nodes),
        max_seconds(budget.max_seconds),
        start(std::chrono::steady_clock::now()) {}

  // Counts one node; false once the budget is spent.
  bool tick() {
    if (exceeded) return false;
    ++nodes;
    if (nodes > max_nodes) {
      exceeded = true;
      return false;
    }
    if ((nodes & 0xfff) == 0) {
      double elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      if (elapsed > max_seconds) exceeded = true;
    }
    return !exceeded;
  }
};

// Depth-first walk over all assignments, students in id order, options
// per student: unmatched first, then schools in preference order.
class ScdcSearcher {
 public:
  ScdcSearcher(const IndexedScdc& idx, const SearchBudget& budget,
               bool stability_prune)
      : idx_(idx),
        budget_(budget),
        st_(internal::ScdcState::empty(idx)),
        stability_prune_(stability_prune && idx.all_min_zero) {
    const int n = idx_.n_students();
    const int m = idx_.n_schools();

    options_.resize(n);
    for (int s = 0; s < n; ++s)
      for (int c : idx_.prefs[s])
        if (idx_.prio_rank[c][s] != kNoRank) options_[s].push_back(c);

    // potential_[c][t][depth]: students at index >= depth that could still
    // bring type t to school c. Drives the unreachable-minimum prune.
    potential_.assign(m, {});
    for (int c = 0; c < m; ++c) {
      potential_[c].assign(idx_.num_types, std::vector<int>(n + 1, 0));
      for (int t = 0; t < idx_.num_types; ++t)
        for (int s = n - 1; s >= 0; --s)
          potential_[c][t][s] = potential_[c][t][s + 1] +
                                (idx_.has_contract(s, c) ? idx_.bits[s][t] : 0);
    }

    if (stability_prune_) {
      suffix_best_.assign(m, std::vector<int>(n + 1, kNoRank));
      finalize_group_.assign(n, {});
      for (int c = 0; c < m; ++c) {
        for (int s = n - 1; s >= 0; --s)
          suffix_best_[c][s] =
              std::min(suffix_best_[c][s + 1],
                       idx_.has_contract(s, c) ? idx_.prio_rank[c][s]
                                               : kNoRank);
        if (!idx_.prio_list[c].empty()) {
          int last = *std::max_element(idx_.prio_list[c].begin(),
                                       idx_.prio_list[c].end());
          finalize_group_[last].push_back(c);
        }
      }
    }
  }

  // on_leaf returns false to stop the walk.
  template <typename Leaf>
  void run(Leaf&& on_leaf) {
    dfs(0, on_leaf);
  }

  const BudgetTracker& budget() const { return budget_; }
  bool stopped_early() const { return stopped_; }

 private:
  bool can_assign(int s, int c) const {
    if (static_cast<int>(st_.roster[c].size()) + 1 > idx_.capacity[c])
      return false;
    for (int t = 0; t < idx_.num_types; ++t)
      if (st_.counts[c][t] + idx_.bits[s][t] > idx_.max_q[c][t]) return false;
    return true;
  }

  bool minima_reachable(int next_depth) const {
    for (int c = 0; c < idx_.n_schools(); ++c)
      for (int t = 0; t < idx_.num_types; ++t)
        if (st_.counts[c][t] + potential_[c][t][next_depth] <
            idx_.min_q[c][t])
          return false;
    return true;
  }

  // Student s could move into c at the end of every completion of this
  // branch: all still-undecided candidates of c rank below s, so the
  // final remove-all-lower displacement reduces c to its current
  // higher-than-s members. Only valid without minimum quotas.
  bool commits_blocking_pair(int s, int c, int next_depth) const {
    if (suffix_best_[c][next_depth] < idx_.prio_rank[c][s]) return false;
    int kept = 0;
    std::vector<int> sums(idx_.num_types, 0);
    for (int other : st_.roster[c])
      if (idx_.prio_rank[c][other] < idx_.prio_rank[c][s]) {
        ++kept;
        for (int t = 0; t < idx_.num_types; ++t) sums[t] += idx_.bits[other][t];
      }
    if (kept + 1 > idx_.capacity[c]) return false;
    for (int t = 0; t < idx_.num_types; ++t)
      if (sums[t] + idx_.bits[s][t] > idx_.max_q[c][t]) return false;
    return true;
  }

  bool branch_dead(int depth, int chosen) {
    int next_depth = depth + 1;
    if (!minima_reachable(next_depth)) return true;
    if (!stability_prune_) return false;

    int cur_rank = chosen < 0 ? kNoRank : idx_.pref_rank[depth][chosen];
    for (int c : options_[depth]) {
      if (idx_.pref_rank[depth][c] >= cur_rank) break;
      if (commits_blocking_pair(depth, c, next_depth)) return true;
    }
    // Schools whose candidate set is now fully decided.
    for (int c : finalize_group_[depth]) {
      for (int s : idx_.prio_list[c]) {
        int assigned = st_.assignment[s];
        int rank = assigned < 0 ? kNoRank : idx_.pref_rank[s][assigned];
        if (idx_.pref_rank[s][c] >= rank) continue;
        if (commits_blocking_pair(s, c, next_depth)) return true;
      }
    }
    return false;
  }

  template <typename Leaf>
  void dfs(int depth, Leaf&& on_leaf) {
    if (stopped_ || budget_.exceeded) return;
    if (depth == idx_.n_students()) {
      if (!on_leaf(st_)) stopped_ = true;
      return;
    }
    if (!budget_.tick()) return;
    if (!branch_dead(depth, -1)) dfs(depth + 1, on_leaf);
    for (int c : options_[depth]) {
      if (stopped_ || budget_.exceeded) return;
      if (!budget_.tick()) return;
      if (!can_assign(depth, c)) continue;
      st_.assign(idx_, depth, c);
      if (!branch_dead(depth, c)) dfs(depth + 1, on_leaf);
      st_.unassign(idx_, depth);
    }
  }

  const IndexedScdc& idx_;
  BudgetTracker budget_;
  internal::ScdcState st_;
  bool stability_prune_;
  bool stopped_ = false;
  std::vector<std::vector<int>> options_;
  std::vector<std::vector<std::vector<int>>> potential_;
  std::vector<std::vector<int>> suffix_best_;
  std::vector<std::vector<int>> finalize_group_;
};

class HrqSearcher {
 public:
  HrqSearcher(const IndexedHrq& idx, const SearchBudget& budget)
      : idx_(idx), budget_(budget), st_(internal::HrqState::empty(idx)) {
    const int n = idx_.n_doctors();
    options_.resize(n);
    for (int d = 0; d < n; ++d)
      for (int h : idx_.prefs[d])
        if (idx_.prio_rank[h][d] != kNoRank) options_[d].push_back(h);

    potential_.assign(idx_.regions.size(), std::vector<int>(n + 1, 0));
    for (std::size_t r = 0; r < idx_.regions.size(); ++r)
      for (int d = n - 1; d >= 0; --d) {
        bool reaches = false;
        for (int h : options_[d])
          if (idx_.regions[r].contains[h]) {
            reaches = true;
            break;
          }
        potential_[r][d] = potential_[r][d + 1] + (reaches ? 1 : 0);
      }
  }

  template <typename Leaf>
  void run(Leaf&& on_leaf) {
    dfs(0, on_leaf);
  }

  const BudgetTracker& budget() const { return budget_; }
  bool stopped_early() const { return stopped_; }

 private:
  bool can_assign(int h) const {
    if (static_cast<int>(st_.roster[h].size()) + 1 > idx_.capacity[h])
      return false;
    for (int r : idx_.regions_of[h])
      if (st_.region_count[r] + 1 > idx_.regions[r].max) return false;
    return true;
  }

  bool minima_reachable(int next_depth) const {
    for (std::size_t r = 0; r < idx_.regions.size(); ++r)
      if (st_.region_count[r] + potential_[r][next_depth] <
          idx_.regions[r].min)
        return false;
    return true;
  }

  template <typename Leaf>
  void dfs(int depth, Leaf&& on_leaf) {
    if (stopped_ || budget_.exceeded) return;
    if (depth == idx_.n_doctors()) {
      if (!on_leaf(st_)) stopped_ = true;
      return;
    }
    if (!budget_.tick()) return;
    if (minima_reachable(depth + 1)) dfs(depth + 1, on_leaf);
    for (int h : options_[depth]) {
      if (stopped_ || budget_.exceeded) return;
      if (!budget_.tick()) return;
      if (!can_assign(h)) continue;
      st_.assign(idx_, depth, h);
      if (minima_reachable(depth + 1)) dfs(depth + 1, on_leaf);
      st_.unassign(idx_, depth);
    }
  }

  const IndexedHrq& idx_;
  BudgetTracker budget_;
  internal::HrqState st_;
  bool stopped_ = false;
  std::vector<std::vector<int>> options_;
  std::vector<std::vector<int>> potential_;
};

}  // namespace

EnumerationStats for_each_feasible(
    const ScdcInstance& inst, const SearchBudget& budget,
    const std::function<bool(const Matching&)>& visit) {
  require_valid(validate_scdc(inst), "for_each_feasible");
  auto idx = IndexedScdc::build(inst);
  ScdcSearcher searcher(idx, budget, /*stability_prune=*/false);
  searcher.run([&](const internal::ScdcState& st) {
    return visit(st.to_matching(idx));
  });
  EnumerationStats stats;
  stats.budget_exceeded = searcher.budget().exceeded;
  stats.complete = !stats.budget_exceeded && !searcher.stopped_early();
  stats.nodes_explored = searcher.budget().nodes;
  return stats;
}

EnumerationStats for_each_feasible(
    const HrqInstance& inst, const SearchBudget& budget,
    const std::function<bool(const Matching&)>& visit) {
  require_valid(validate_hrq(inst), "for_each_feasible");
  auto idx = IndexedHrq::build(inst);
  HrqSearcher searcher(idx, budget);
  searcher.run([&](const internal::HrqState& st) {
    return visit(st.to_matching(idx));
  });
  EnumerationStats stats;
  stats.budget_exceeded = searcher.budget().exceeded;
  stats.complete = !stats.budget_exceeded && !searcher.stopped_early();
  stats.nodes_explored = searcher.budget().nodes;
  return stats;
}

std::vector<Matching> enumerate_feasible(const ScdcInstance& inst,
                                         const SearchBudget& budget) {
  std::vector<Matching> out;
  for_each_feasible(inst, budget, [&](const Matching& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::vector<Matching> enumerate_feasible(const HrqInstance& inst,
                                         const SearchBudget& budget) {
  std::vector<Matching> out;
  for_each_feasible(inst, budget, [&](const Matching& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

namespace {

SearchResult finish_result(std::vector<Matching> found, bool budget_exceeded,
                           std::uint64_t nodes) {
  SearchResult result;
  result.nodes_explored = nodes;
  result.matchings = std::move(found);
  if (!result.matchings.empty())
    result.status = SearchStatus::Found;
  else
    result.status = budget_exceeded ? SearchStatus::BudgetExceeded
                                    : SearchStatus::NoneExists;
  return result;
}

}  // namespace

SearchResult find_stable(const ScdcInstance& inst, SearchMode mode,
                         const SearchBudget& budget) {
  require_valid(validate_scdc(inst), "find_stable");
  auto idx = IndexedScdc::build(inst);
  ScdcSearcher searcher(idx, budget, /*stability_prune=*/true);
  std::vector<Matching> found;
  searcher.run([&](const internal::ScdcState& st) {
    if (internal::exists_blocking_scdc(idx, st)) return true;
    found.push_back(st.to_matching(idx));
    return mode == SearchMode::All;
  });
  bool exceeded = searcher.budget().exceeded;
  // An exhausted budget taints a Found-all or NoneExists claim either way.
  if (exceeded && mode == SearchMode::All) {
    SearchResult result;
    result.status = SearchStatus::BudgetExceeded;
    result.matchings = std::move(found);
    result.nodes_explored = searcher.budget().nodes;
    return result;
  }
  return finish_result(std::move(found), exceeded, searcher.budget().nodes);
}

SearchResult find_stable(const HrqInstance& inst, SearchMode mode,
                         const SearchBudget& budget) {
  require_valid(validate_hrq(inst), "find_stable");
  auto idx = IndexedHrq::build(inst);
  HrqSearcher searcher(idx, budget);
  std::vector<Matching> found;
  searcher.run([&](const internal::HrqState& st) {
    if (internal::exists_blocking_hrq(idx, st)) return true;
    found.push_back(st.to_matching(idx));
    return mode == SearchMode::All;
  });
  bool exceeded = searcher.budget().exceeded;
  if (exceeded && mode == SearchMode::All) {
    SearchResult result;
    result.status = SearchStatus::BudgetExceeded;
    result.matchings = std::move(found);
    result.nodes_explored = searcher.budget().nodes;
    return result;
  }
  return finish_result(std::move(found), exceeded, searcher.budget().nodes);
}

Matching serial_dictatorship(const HrqInstance& inst, const MasterList& ml) {
  require_valid(validate_hrq(inst), "serial_dictatorship");
  for (const RegionSpec& region : inst.regions)
    if (region.min_quota != 0)
      throw std::invalid_argument(
          "serial_dictatorship: region '" + region.id +
          "' has a nonzero minimum quota; only maximum quotas are supported");

  std::set<Id> listed;
  for (const Id& did : ml.order) {
    if (!listed.insert(did).second)
      throw std::invalid_argument("master list repeats '" + did + "'");
    if (!inst.doctors.count(did))
      throw std::invalid_argument("master list names unknown doctor '" + did +
                                  "'");
  }
  for (const auto& [did, _] : inst.doctors)
    if (!listed.count(did))
      throw std::invalid_argument("master list does not cover doctor '" + did +
                                  "'");

  auto idx = IndexedHrq::build(inst);
  auto st = internal::HrqState::empty(idx);
  for (const Id& did : ml.order) {
    int d = idx.doctor_index.at(did);
    for (int h : idx.prefs[d]) {
      if (idx.prio_rank[h][d] == kNoRank) continue;
      if (static_cast<int>(st.roster[h].size()) >= idx.capacity[h]) continue;
      bool fits = true;
      for (int r : idx.regions_of[h])
        if (st.region_count[r] >= idx.regions[r].max) {
          fits = false;
          break;
        }
      if (!fits) continue;
      st.assign(idx, d, h);
      break;
    }
  }
  return st.to_matching(idx);
}

Matching sd_school_choice(const ScdcInstance& inst, const MasterList& ml) {
  for (const auto& [cid, school] : inst.schools)
    for (int q : school.min_quotas)
      if (q != 0)
        throw std::invalid_argument(
            "sd_school_choice: school '" + cid +
            "' has a nonzero minimum quota; only maximum quotas are supported");

  auto reduced = reduce_scdc_to_hrq(inst);

  MasterList doctor_ml;
  for (const Id& sid : ml.order) {
    auto it = reduced.map.student_to_doctor.find(sid);
    if (it == reduced.map.student_to_doctor.end())
      throw std::invalid_argument("master list names unknown student '" + sid +
                                  "'");
    doctor_ml.order.push_back(it->second);
  }

  Matching induced = serial_dictatorship(reduced.instance, doctor_ml);
  return restore_matching(reduced.map, induced);
}

}  // namespace matchdc
