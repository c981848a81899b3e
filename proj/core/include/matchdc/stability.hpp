#pragma once

#include <vector>

#include "matchdc/model.hpp"

namespace matchdc {

// A blocking pair together with the displaced agents that make it work.
// Applying the witness (add the new contract, drop the displaced agents'
// contracts and the blocking agent's old contract) yields a feasible
// outcome the blocking agent strictly prefers. Displaced students are
// matched to the institution itself; displaced doctors may also sit at
// another hospital of a region containing the institution, ranked below
// the blocking contract in every region ranking both (regional priorities
// arbitrate across hospitals the way school priorities arbitrate across
// type groups).
struct BlockingWitness {
  enum class Kind { Wasteful, JustifiedEnvy };

  Id agent;
  Id institution;
  std::vector<Id> displaced;  // sorted by id; empty iff kind == Wasteful
  Kind kind = Kind::Wasteful;

  friend bool operator==(const BlockingWitness&,
                         const BlockingWitness&) = default;
};

// True iff every matched contract is acceptable to both sides. Under the
// mutual-listing contract rule this holds whenever the matching only uses
// contracts of the instance; kept for matchings from external files.
bool is_individually_rational(const ScdcInstance& inst, const Matching& m);
bool is_individually_rational(const HrqInstance& inst, const Matching& m);

// Every blocking pair of the feasible outcome, one witness per pair, in
// (agent, institution) lexicographic order. For each pair the reported
// displaced set has minimal cardinality, ties broken by removing
// lowest-priority agents first. Throws std::invalid_argument when the
// outcome is infeasible (stability is defined on feasible outcomes only).
std::vector<BlockingWitness> find_blocking_pairs_scdc(const ScdcInstance& inst,
                                                      const Matching& outcome);
std::vector<BlockingWitness> find_blocking_pairs_hrq(const HrqInstance& inst,
                                                     const Matching& outcome);

bool is_stable_scdc(const ScdcInstance& inst, const Matching& outcome);
bool is_stable_hrq(const HrqInstance& inst, const Matching& outcome);

// Justified-envy-by-master-list witnesses (displaced sets are nonempty and
// every displaced agent ranks below the envious one in both the school
// priority and the master list). Empty result iff the outcome is fair by
// master list. Throws on infeasible outcomes or a master list that does
// not cover every student.
std::vector<BlockingWitness> check_fair_by_master_list(
    const ScdcInstance& inst, const Matching& outcome, const MasterList& ml);

}  // namespace matchdc
