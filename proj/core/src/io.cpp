#include "matchdc/io.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace matchdc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::runtime_error("parse error: " + message);
}

json parse_root(const std::string& text, const char* expected_kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top-level value must be an object");
  if (expected_kind) {
    auto it = j.find("kind");
    if (it == j.end() || !it->is_string())
      fail("missing string field \"kind\"");
    if (it->get<std::string>() != expected_kind)
      fail("expected kind \"" + std::string(expected_kind) + "\", got \"" +
           it->get<std::string>() + "\"");
  }
  return j;
}

const json& field(const json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end())
    fail("missing field \"" + std::string(name) + "\" in " + where);
  return *it;
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<int>();
}

std::vector<int> get_int_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(get_int(v, where + " entry"));
  return out;
}

std::vector<std::string> get_string_array(const json& j,
                                          const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) fail(where + " entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Contract get_contract(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() ||
      !j[1].is_string())
    fail(where + " must be a two-string array");
  return {j[0].get<std::string>(), j[1].get<std::string>()};
}

json contract_json(const Contract& x) {
  return json::array({x.agent, x.institution});
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string serialize(const ScdcInstance& inst) {
  json j;
  j["kind"] = "scdc";
  j["type_names"] = inst.type_names;
  j["students"] = json::object();
  for (const auto& [sid, student] : inst.students)
    j["students"][sid] = {{"type_vector", student.type_vector.bits},
                          {"prefs", student.prefs.ranked}};
  j["schools"] = json::object();
  for (const auto& [cid, school] : inst.schools)
    j["schools"][cid] = {{"capacity", school.capacity},
                         {"max_quotas", school.max_quotas},
                         {"min_quotas", school.min_quotas},
                         {"priority", school.priority.ranked}};
  return dump(j);
}

ScdcInstance parse_scdc(const std::string& text) {
  json j = parse_root(text, "scdc");
  ScdcInstance inst;
  inst.type_names = get_string_array(field(j, "type_names", "instance"),
                                     "\"type_names\"");

  const json& students = field(j, "students", "instance");
  if (!students.is_object()) fail("\"students\" must be an object");
  for (const auto& [sid, body] : students.items()) {
    Student student;
    student.type_vector.bits = get_int_array(
        field(body, "type_vector", "student '" + sid + "'"),
        "student '" + sid + "' type_vector");
    student.prefs.ranked =
        get_string_array(field(body, "prefs", "student '" + sid + "'"),
                         "student '" + sid + "' prefs");
    inst.students[sid] = std::move(student);
  }

  const json& schools = field(j, "schools", "instance");
  if (!schools.is_object()) fail("\"schools\" must be an object");
  for (const auto& [cid, body] : schools.items()) {
    School school;
    const std::string where = "school '" + cid + "'";
    school.capacity = get_int(field(body, "capacity", where), where + " capacity");
    school.max_quotas = get_int_array(field(body, "max_quotas", where),
                                      where + " max_quotas");
    school.min_quotas = get_int_array(field(body, "min_quotas", where),
                                      where + " min_quotas");
    school.priority.ranked =
        get_string_array(field(body, "priority", where), where + " priority");
    inst.schools[cid] = std::move(school);
  }
  return inst;
}

std::string serialize(const HrqInstance& inst) {
  json j;
  j["kind"] = "hrq";
  j["doctors"] = json::object();
  for (const auto& [did, doctor] : inst.doctors)
    j["doctors"][did] = {{"prefs", doctor.prefs.ranked}};
  j["hospitals"] = json::object();
  for (const auto& [hid, hospital] : inst.hospitals)
    j["hospitals"][hid] = {{"capacity", hospital.capacity},
                           {"priority", hospital.priority.ranked}};
  j["regions"] = json::array();
  for (const RegionSpec& region : inst.regions) {
    json r;
    r["id"] = region.id;
    r["hospitals"] = region.hospitals;  // std::set serializes sorted
    r["min_quota"] = region.min_quota;
    r["max_quota"] = region.max_quota;
    r["priority"] = json::array();
    for (const Contract& y : region.priority)
      r["priority"].push_back(contract_json(y));
    j["regions"].push_back(std::move(r));
  }
  return dump(j);
}

HrqInstance parse_hrq(const std::string& text) {
  json j = parse_root(text, "hrq");
  HrqInstance inst;

  const json& doctors = field(j, "doctors", "instance");
  if (!doctors.is_object()) fail("\"doctors\" must be an object");
  for (const auto& [did, body] : doctors.items()) {
    Doctor doctor;
    doctor.prefs.ranked =
        get_string_array(field(body, "prefs", "doctor '" + did + "'"),
                         "doctor '" + did + "' prefs");
    inst.doctors[did] = std::move(doctor);
  }

  const json& hospitals = field(j, "hospitals", "instance");
  if (!hospitals.is_object()) fail("\"hospitals\" must be an object");
  for (const auto& [hid, body] : hospitals.items()) {
    Hospital hospital;
    const std::string where = "hospital '" + hid + "'";
    hospital.capacity =
        get_int(field(body, "capacity", where), where + " capacity");
    hospital.priority.ranked =
        get_string_array(field(body, "priority", where), where + " priority");
    inst.hospitals[hid] = std::move(hospital);
  }

  const json& regions = field(j, "regions", "instance");
  if (!regions.is_array()) fail("\"regions\" must be an array");
  for (const auto& body : regions) {
    RegionSpec region;
    if (!body.is_object()) fail("region entries must be objects");
    const json& id = field(body, "id", "region");
    if (!id.is_string()) fail("region id must be a string");
    region.id = id.get<std::string>();
    const std::string where = "region '" + region.id + "'";
    for (const std::string& hid : get_string_array(
             field(body, "hospitals", where), where + " hospitals"))
      region.hospitals.insert(hid);
    region.min_quota =
        get_int(field(body, "min_quota", where), where + " min_quota");
    region.max_quota =
        get_int(field(body, "max_quota", where), where + " max_quota");
    const json& priority = field(body, "priority", where);
    if (!priority.is_array()) fail(where + " priority must be an array");
    for (const auto& p : priority)
      region.priority.push_back(get_contract(p, where + " priority entry"));
    inst.regions.push_back(std::move(region));
  }
  return inst;
}

std::string serialize(const Matching& m) {
  json j;
  j["kind"] = "matching";
  j["pairs"] = json::array();
  for (const Contract& x : m.pairs()) j["pairs"].push_back(contract_json(x));
  return dump(j);
}

Matching parse_matching(const std::string& text) {
  json j = parse_root(text, "matching");
  const json& pairs = field(j, "pairs", "matching");
  if (!pairs.is_array()) fail("\"pairs\" must be an array");
  std::vector<Contract> out;
  for (const auto& p : pairs) out.push_back(get_contract(p, "pair"));
  return Matching(std::move(out));
}

std::string serialize(const MasterList& ml) {
  json j;
  j["kind"] = "master_list";
  j["order"] = ml.order;
  return dump(j);
}

MasterList parse_master_list(const std::string& text) {
  json j = parse_root(text, "master_list");
  MasterList ml;
  ml.order = get_string_array(field(j, "order", "master list"), "\"order\"");
  return ml;
}

std::string serialize(const ReductionMap& map) {
  json j;
  j["kind"] = "map";
  j["student_to_doctor"] = json::object();
  for (const auto& [sid, did] : map.student_to_doctor)
    j["student_to_doctor"][sid] = did;
  j["contracts"] = json::array();
  for (const auto& [x, y] : map.contract_to_induced)
    j["contracts"].push_back(json::array({contract_json(x), contract_json(y)}));
  j["schools"] = json::object();
  for (const auto& [cid, image] : map.schools) {
    json s;
    s["school_region"] = image.school_region;
    s["type_regions"] = image.type_regions;
    s["hospitals"] = json::object();
    for (const auto& [key, hid] : image.hospitals) s["hospitals"][key] = hid;
    j["schools"][cid] = std::move(s);
  }
  return dump(j);
}

ReductionMap parse_reduction_map(const std::string& text) {
  json j = parse_root(text, "map");
  ReductionMap map;

  const json& s2d = field(j, "student_to_doctor", "map");
  if (!s2d.is_object()) fail("\"student_to_doctor\" must be an object");
  for (const auto& [sid, did] : s2d.items()) {
    if (!did.is_string()) fail("doctor ids must be strings");
    map.student_to_doctor[sid] = did.get<std::string>();
    map.doctor_to_student[did.get<std::string>()] = sid;
  }

  const json& contracts = field(j, "contracts", "map");
  if (!contracts.is_array()) fail("\"contracts\" must be an array");
  for (const auto& entry : contracts) {
    if (!entry.is_array() || entry.size() != 2)
      fail("contract map entries must be pairs");
    Contract x = get_contract(entry[0], "contract map source");
    Contract y = get_contract(entry[1], "contract map image");
    map.contract_to_induced[x] = y;
    map.contract_from_induced[y] = x;
  }

  const json& schools = field(j, "schools", "map");
  if (!schools.is_object()) fail("\"schools\" must be an object");
  for (const auto& [cid, body] : schools.items()) {
    SchoolImage image;
    const std::string where = "school image '" + cid + "'";
    const json& region = field(body, "school_region", where);
    if (!region.is_string()) fail(where + " school_region must be a string");
    image.school_region = region.get<std::string>();
    image.type_regions = get_string_array(field(body, "type_regions", where),
                                          where + " type_regions");
    const json& hospitals = field(body, "hospitals", where);
    if (!hospitals.is_object()) fail(where + " hospitals must be an object");
    for (const auto& [key, hid] : hospitals.items()) {
      if (!hid.is_string()) fail(where + " hospital ids must be strings");
      image.hospitals[key] = hid.get<std::string>();
    }
    map.schools[cid] = std::move(image);
  }
  return map;
}

std::string serialize(const SetCoverInstance& sc) {
  json j;
  j["universe"] = sc.universe;
  j["family"] = json::array();
  for (const auto& f : sc.family) j["family"].push_back(f);
  j["budget"] = sc.budget;
  return dump(j);
}

SetCoverInstance parse_set_cover(const std::string& text) {
  json j = parse_root(text, nullptr);
  SetCoverInstance sc;
  sc.universe =
      get_string_array(field(j, "universe", "set cover"), "\"universe\"");
  const json& family = field(j, "family", "set cover");
  if (!family.is_array()) fail("\"family\" must be an array");
  for (const auto& f : family) {
    auto elements = get_string_array(f, "family set");
    sc.family.emplace_back(elements.begin(), elements.end());
  }
  sc.budget = get_int(field(j, "budget", "set cover"), "\"budget\"");
  return sc;
}

FileKind detect_kind(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    return FileKind::Unknown;
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    return FileKind::Unknown;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "scdc") return FileKind::Scdc;
  if (kind == "hrq") return FileKind::Hrq;
  if (kind == "matching") return FileKind::Matching;
  if (kind == "master_list") return FileKind::MasterList;
  if (kind == "map") return FileKind::Map;
  return FileKind::Unknown;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula f;
  int declared_clauses = -1;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream tokens(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      tokens >> p >> cnf >> f.num_variables >> declared_clauses;
      if (cnf != "cnf" || tokens.fail())
        fail("malformed DIMACS header: " + line);
      continue;
    }
    int literal;
    while (tokens >> literal) {
      if (literal == 0) {
        if (pending.size() != 3)
          fail("clause with " + std::to_string(pending.size()) +
               " literals; exactly 3 required");
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        pending.push_back(literal);
      }
    }
    if (tokens.fail() && !tokens.eof()) fail("non-integer token: " + line);
  }
  if (!pending.empty()) fail("unterminated clause at end of input");
  if (declared_clauses < 0) fail("missing DIMACS header");
  if (declared_clauses != static_cast<int>(f.clauses.size()))
    fail("header declares " + std::to_string(declared_clauses) +
         " clauses, found " + std::to_string(f.clauses.size()));
  for (const auto& clause : f.clauses)
    for (int lit : clause)
      if (std::abs(lit) > f.num_variables)
        fail("literal " + std::to_string(lit) + " out of range");
  return f;
}

std::string serialize_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_variables << " " << f.clauses.size() << "\n";
  for (const auto& clause : f.clauses)
    out << clause[0] << " " << clause[1] << " " << clause[2] << " 0\n";
  return out.str();
}

std::string to_json_string(const FeasibilityVerdict& verdict) {
  json j;
  j["feasible"] = verdict.feasible;
  j["violations"] = json::array();
  for (const Violation& v : verdict.violations) {
    json entry;
    entry["kind"] = to_string(v.kind);
    switch (v.kind) {
      case Violation::Kind::UnknownContract:
        entry["pair"] = contract_json(v.pair);
        break;
      case Violation::Kind::MultipleAssignments:
        entry["agent"] = v.subject;
        entry["count"] = v.count;
        break;
      case Violation::Kind::TypeMaxViolated:
      case Violation::Kind::TypeMinViolated:
        entry["subject"] = v.subject;
        entry["type"] = v.type_name;
        entry["count"] = v.count;
        entry["bound"] = v.bound;
        break;
      default:
        entry["subject"] = v.subject;
        entry["count"] = v.count;
        entry["bound"] = v.bound;
        break;
    }
    j["violations"].push_back(std::move(entry));
  }
  return dump(j);
}

std::string to_json_string(const std::vector<BlockingWitness>& witnesses) {
  json j = json::array();
  for (const BlockingWitness& w : witnesses) {
    json entry;
    entry["agent"] = w.agent;
    entry["institution"] = w.institution;
    entry["displaced"] = w.displaced;
    entry["kind"] = w.kind == BlockingWitness::Kind::Wasteful
                        ? "Wasteful"
                        : "JustifiedEnvy";
    j.push_back(std::move(entry));
  }
  return dump(j);
}

std::string to_json_string(const SearchResult& result) {
  json j;
  switch (result.status) {
    case SearchStatus::Found: j["status"] = "found"; break;
    case SearchStatus::NoneExists: j["status"] = "none_exists"; break;
    case SearchStatus::BudgetExceeded: j["status"] = "budget_exceeded"; break;
  }
  j["nodes_explored"] = result.nodes_explored;
  j["matchings"] = json::array();
  for (const Matching& m : result.matchings) {
    json pairs = json::array();
    for (const Contract& x : m.pairs()) pairs.push_back(contract_json(x));
    j["matchings"].push_back({{"kind", "matching"}, {"pairs", pairs}});
  }
  return dump(j);
}

}  // namespace matchdc
