#pragma once

#include <string>
#include <vector>

#include "matchdc/feasibility.hpp"
#include "matchdc/model.hpp"
#include "matchdc/reductions.hpp"
#include "matchdc/solvers.hpp"
#include "matchdc/stability.hpp"

// JSON file formats (one object per file, tagged with a top-level "kind")
// and the DIMACS CNF reader. Serialization is canonical: object keys are
// sorted, arrays keep their order, two-space indent, trailing newline —
// identical values always produce identical bytes.

namespace matchdc {

std::string serialize(const ScdcInstance& inst);
std::string serialize(const HrqInstance& inst);
std::string serialize(const Matching& m);
std::string serialize(const MasterList& ml);
std::string serialize(const ReductionMap& map);
std::string serialize(const SetCoverInstance& sc);

// All parsers throw std::runtime_error with a message naming the problem.
ScdcInstance parse_scdc(const std::string& text);
HrqInstance parse_hrq(const std::string& text);
Matching parse_matching(const std::string& text);
MasterList parse_master_list(const std::string& text);
ReductionMap parse_reduction_map(const std::string& text);
SetCoverInstance parse_set_cover(const std::string& text);

enum class FileKind { Scdc, Hrq, Matching, MasterList, Map, Unknown };

FileKind detect_kind(const std::string& text);

CnfFormula parse_dimacs(const std::string& text);
std::string serialize_dimacs(const CnfFormula& f);

// Report payloads printed by the CLI.
std::string to_json_string(const FeasibilityVerdict& verdict);
std::string to_json_string(const std::vector<BlockingWitness>& witnesses);
std::string to_json_string(const SearchResult& result);

}  // namespace matchdc
