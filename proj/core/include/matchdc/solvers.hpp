#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "matchdc/model.hpp"

namespace matchdc {

struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 300.0;
};

struct EnumerationStats {
  bool complete = false;        // full space explored
  bool budget_exceeded = false;  // truncated by the node/time budget
  std::uint64_t nodes_explored = 0;
};

// Visits every feasible matching exactly once, in agent-major
// lexicographic order (agents by id; per agent the unmatched option comes
// first, then the acceptable institutions in preference order). The
// visitor returns false to stop early. Backtracking prunes on capacity
// and max-quota overflow plus an unreachable-minimum bound; minimum
// quotas are fully checked at leaves.
EnumerationStats for_each_feasible(
    const ScdcInstance& inst, const SearchBudget& budget,
    const std::function<bool(const Matching&)>& visit);
EnumerationStats for_each_feasible(
    const HrqInstance& inst, const SearchBudget& budget,
    const std::function<bool(const Matching&)>& visit);

std::vector<Matching> enumerate_feasible(const ScdcInstance& inst,
                                         const SearchBudget& budget = {});
std::vector<Matching> enumerate_feasible(const HrqInstance& inst,
                                         const SearchBudget& budget = {});

enum class SearchMode { First, All, Exists };

enum class SearchStatus { Found, NoneExists, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::NoneExists;
  // First/Exists: at most one entry; All: every stable matching found.
  std::vector<Matching> matchings;
  std::uint64_t nodes_explored = 0;
};

// Exhaustive stable-outcome search: walks the feasible matchings and
// filters by stability. Deterministic; Exists short-circuits on the first
// hit. On instances without minimum quotas the walk additionally prunes
// partial assignments that already commit to a blocking pair.
SearchResult find_stable(const ScdcInstance& inst, SearchMode mode,
                         const SearchBudget& budget = {});
SearchResult find_stable(const HrqInstance& inst, SearchMode mode,
                         const SearchBudget& budget = {});

// Processes doctors in master-list order; each takes their most-preferred
// hospital whose capacity and covering regions' max quotas all have
// slack, or stays unmatched. Requires every regional minimum quota to be
// zero and a master list covering all doctors (throws otherwise). The
// output is stable with regional priorities when every region priority is
// consistent with the master list and every hospital belongs to at least
// one region; a hospital outside all regions is arbitrated by its own
// priority, which the master list does not control.
Matching serial_dictatorship(const HrqInstance& inst, const MasterList& ml);

// Serial dictatorship for school choice without minimum quotas: reduces
// the instance to regional quotas, runs serial_dictatorship under the
// master list carried over to doctors, and restores the outcome.
Matching sd_school_choice(const ScdcInstance& inst, const MasterList& ml);

}  // namespace matchdc
