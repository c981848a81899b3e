#pragma once

#include <string>
#include <vector>

#include "matchdc/model.hpp"

namespace matchdc {

// One violated constraint. Which fields are meaningful depends on `kind`:
// quota kinds carry subject/count/bound (and type_name for the per-type
// ones), MultipleAssignments carries the agent in `subject`, and
// UnknownContract carries the offending pair.
struct Violation {
  enum class Kind {
    CapacityExceeded,
    MultipleAssignments,
    TypeMaxViolated,
    TypeMinViolated,
    RegionMaxViolated,
    RegionMinViolated,
    UnknownContract,
  };

  Kind kind;
  Id subject;
  std::string type_name;
  int count = 0;
  int bound = 0;
  Contract pair;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(Violation::Kind kind);
std::string describe(const Violation& v);

// All violations are reported, not just the first.
struct FeasibilityVerdict {
  bool feasible = false;
  std::vector<Violation> violations;
};

// Feasible iff every student is matched at most once, every school is
// within capacity, and every school's per-type admitted counts lie within
// [min_quota, max_quota] componentwise. Pairs that are not contracts of
// the instance are reported as UnknownContract rather than raising.
FeasibilityVerdict check_feasible_scdc(const ScdcInstance& inst,
                                       const Matching& outcome);

// Feasible iff every doctor is matched at most once, every hospital is
// within capacity, and every region's matched-doctor count lies within
// [min_quota, max_quota].
FeasibilityVerdict check_feasible_hrq(const HrqInstance& inst,
                                      const Matching& outcome);

}  // namespace matchdc
