// matchdc command-line surface: validation, the diversity-to-regional
// reduction, the min-to-max quota transform, feasibility/stability/
// fairness checks, exhaustive and serial-dictatorship solving, and the
// gadget/random instance generators.
//
// Exit codes: 0 property holds / success, 1 property fails (witnesses on
// stdout), 2 usage/parse/validation error, 3 search budget exhausted.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "matchdc/feasibility.hpp"
#include "matchdc/io.hpp"
#include "matchdc/model.hpp"
#include "matchdc/random_gen.hpp"
#include "matchdc/reductions.hpp"
#include "matchdc/solvers.hpp"
#include "matchdc/stability.hpp"

namespace {

using namespace matchdc;

constexpr int kOk = 0;
constexpr int kPropertyFails = 1;
constexpr int kUsageError = 2;
constexpr int kBudgetExhausted = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

int run_validate(const std::string& file) {
  const std::string text = read_input(file);
  ValidationReport report;
  switch (detect_kind(text)) {
    case FileKind::Scdc: report = validate_scdc(parse_scdc(text)); break;
    case FileKind::Hrq: report = validate_hrq(parse_hrq(text)); break;
    case FileKind::Matching: parse_matching(text); break;
    case FileKind::MasterList: parse_master_list(text); break;
    case FileKind::Map: parse_reduction_map(text); break;
    case FileKind::Unknown:
      throw std::runtime_error("unrecognized file kind");
  }
  if (report.ok()) {
    std::cout << "ok\n";
    return kOk;
  }
  for (const std::string& error : report.errors)
    std::cout << "invalid: " << error << "\n";
  return kPropertyFails;
}

void require_valid_scdc(const ScdcInstance& inst) {
  auto report = validate_scdc(inst);
  if (!report.ok())
    throw std::runtime_error("instance does not validate: " +
                             report.errors.front());
}

void require_valid_hrq(const HrqInstance& inst) {
  auto report = validate_hrq(inst);
  if (!report.ok())
    throw std::runtime_error("instance does not validate: " +
                             report.errors.front());
}

int run_check(const std::string& property, const std::string& instance_file,
              const std::string& matching_file,
              const std::string& master_list_file) {
  const std::string instance_text = read_input(instance_file);
  const Matching outcome = parse_matching(read_input(matching_file));
  const FileKind kind = detect_kind(instance_text);

  if (property == "feasible") {
    FeasibilityVerdict verdict;
    if (kind == FileKind::Scdc) {
      auto inst = parse_scdc(instance_text);
      require_valid_scdc(inst);
      verdict = check_feasible_scdc(inst, outcome);
    } else if (kind == FileKind::Hrq) {
      auto inst = parse_hrq(instance_text);
      require_valid_hrq(inst);
      verdict = check_feasible_hrq(inst, outcome);
    } else {
      throw std::runtime_error("expected an scdc or hrq instance");
    }
    std::cout << to_json_string(verdict);
    return verdict.feasible ? kOk : kPropertyFails;
  }

  if (property == "stable") {
    std::vector<BlockingWitness> witnesses;
    if (kind == FileKind::Scdc) {
      auto inst = parse_scdc(instance_text);
      require_valid_scdc(inst);
      witnesses = find_blocking_pairs_scdc(inst, outcome);
    } else if (kind == FileKind::Hrq) {
      auto inst = parse_hrq(instance_text);
      require_valid_hrq(inst);
      witnesses = find_blocking_pairs_hrq(inst, outcome);
    } else {
      throw std::runtime_error("expected an scdc or hrq instance");
    }
    std::cout << to_json_string(witnesses);
    return witnesses.empty() ? kOk : kPropertyFails;
  }

  if (property == "fair-ml") {
    if (kind != FileKind::Scdc)
      throw std::runtime_error("fair-ml applies to scdc instances");
    if (master_list_file.empty())
      throw std::runtime_error("fair-ml requires --master-list");
    auto inst = parse_scdc(instance_text);
    require_valid_scdc(inst);
    auto ml = parse_master_list(read_input(master_list_file));
    auto witnesses = check_fair_by_master_list(inst, outcome, ml);
    std::cout << to_json_string(witnesses);
    return witnesses.empty() ? kOk : kPropertyFails;
  }

  throw std::runtime_error("unknown property '" + property +
                           "' (expected feasible, stable or fair-ml)");
}

int run_solve(const std::string& method, const std::string& instance_file,
              const std::string& master_list_file, bool all,
              const SearchBudget& budget) {
  const std::string instance_text = read_input(instance_file);
  const FileKind kind = detect_kind(instance_text);

  if (method == "sd") {
    if (master_list_file.empty())
      throw std::runtime_error("--method sd requires --master-list");
    auto ml = parse_master_list(read_input(master_list_file));
    Matching result;
    if (kind == FileKind::Scdc) {
      result = sd_school_choice(parse_scdc(instance_text), ml);
    } else if (kind == FileKind::Hrq) {
      result = serial_dictatorship(parse_hrq(instance_text), ml);
    } else {
      throw std::runtime_error("expected an scdc or hrq instance");
    }
    std::cout << serialize(result);
    return kOk;
  }

  if (method == "exhaustive") {
    const SearchMode mode = all ? SearchMode::All : SearchMode::First;
    SearchResult result;
    if (kind == FileKind::Scdc) {
      result = find_stable(parse_scdc(instance_text), mode, budget);
    } else if (kind == FileKind::Hrq) {
      result = find_stable(parse_hrq(instance_text), mode, budget);
    } else {
      throw std::runtime_error("expected an scdc or hrq instance");
    }
    std::cout << to_json_string(result);
    switch (result.status) {
      case SearchStatus::Found: return kOk;
      case SearchStatus::NoneExists: return kPropertyFails;
      case SearchStatus::BudgetExceeded: return kBudgetExhausted;
    }
  }

  throw std::runtime_error("unknown method '" + method +
                           "' (expected exhaustive or sd)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matching with diversity constraints and regional quotas"};
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "check a file's invariants");
  std::string validate_file;
  validate_cmd->add_option("file", validate_file, "input file or -")->required();

  auto* reduce_cmd =
      app.add_subcommand("reduce", "transform an scdc instance to hrq");
  std::string reduce_in, reduce_out, reduce_map_out;
  reduce_cmd->add_option("instance", reduce_in, "scdc instance")->required();
  reduce_cmd->add_option("-o,--output", reduce_out, "hrq output")->required();
  reduce_cmd->add_option("--map", reduce_map_out, "write the reduction map");

  auto* restore_cmd =
      app.add_subcommand("restore", "map an hrq matching back to scdc");
  std::string restore_map, restore_in, restore_out;
  restore_cmd->add_option("--map", restore_map, "reduction map")->required();
  restore_cmd->add_option("matching", restore_in, "hrq matching")->required();
  restore_cmd->add_option("-o,--output", restore_out, "scdc matching output")
      ->required();

  auto* minmax_cmd = app.add_subcommand(
      "minmax", "rewrite regional minimum quotas as maximum quotas");
  std::string minmax_in, minmax_out;
  minmax_cmd->add_option("instance", minmax_in, "hrq instance")->required();
  minmax_cmd->add_option("-o,--output", minmax_out, "hrq output")->required();

  auto* check_cmd = app.add_subcommand("check", "check a matching property");
  std::string check_property, check_instance, check_matching, check_ml;
  check_cmd->add_option("property", check_property, "feasible|stable|fair-ml")
      ->required();
  check_cmd->add_option("instance", check_instance, "instance file")
      ->required();
  check_cmd->add_option("matching", check_matching, "matching file")
      ->required();
  check_cmd->add_option("--master-list", check_ml, "master list file");

  auto* solve_cmd = app.add_subcommand("solve", "compute a stable outcome");
  std::string solve_method, solve_instance, solve_ml;
  bool solve_all = false;
  SearchBudget budget;
  solve_cmd->add_option("--method", solve_method, "exhaustive|sd")->required();
  solve_cmd->add_option("instance", solve_instance, "instance file")
      ->required();
  solve_cmd->add_option("--master-list", solve_ml, "master list file");
  solve_cmd->add_flag("--all", solve_all, "list all stable outcomes");
  solve_cmd->add_option("--budget-nodes", budget.max_nodes, "node budget");
  solve_cmd->add_option("--budget-seconds", budget.max_seconds, "time budget");

  auto* gen_cmd = app.add_subcommand("gen", "generate instances");
  gen_cmd->require_subcommand(1);

  auto* gen_setcover = gen_cmd->add_subcommand(
      "setcover", "diversity gadget from a (3,3)-set-cover instance");
  std::string setcover_in, setcover_out;
  gen_setcover->add_option("input", setcover_in, "set cover json")->required();
  gen_setcover->add_option("-o,--output", setcover_out, "scdc output")
      ->required();

  auto* gen_threesat = gen_cmd->add_subcommand(
      "threesat", "diversity gadget from a restricted 3-sat formula");
  std::string threesat_in, threesat_out;
  gen_threesat->add_option("input", threesat_in, "DIMACS cnf")->required();
  gen_threesat->add_option("-o,--output", threesat_out, "scdc output")
      ->required();

  auto* gen_random = gen_cmd->add_subcommand("random", "seeded random instance");
  std::string random_model = "scdc", random_out;
  RandomScdcParams scdc_params;
  RandomHrqParams hrq_params;
  std::string min_quota_mode = "zero";
  std::uint64_t seed = 0;
  double prob = 0.8;
  gen_random->add_option("model", random_model, "scdc|hrq")->required();
  gen_random->add_option("--students", scdc_params.n_students);
  gen_random->add_option("--schools", scdc_params.n_schools);
  gen_random->add_option("--types", scdc_params.n_types);
  gen_random->add_option("--doctors", hrq_params.n_doctors);
  gen_random->add_option("--hospitals", hrq_params.n_hospitals);
  gen_random->add_option("--regions", hrq_params.n_regions);
  gen_random->add_option("--prob", prob, "acceptability probability");
  gen_random->add_option("--min-quotas", min_quota_mode, "zero|random");
  gen_random->add_option("--seed", seed);
  gen_random->add_option("-o,--output", random_out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*validate_cmd) return run_validate(validate_file);

    if (*reduce_cmd) {
      auto inst = parse_scdc(read_input(reduce_in));
      auto reduced = reduce_scdc_to_hrq(inst);
      write_output(reduce_out, serialize(reduced.instance));
      if (!reduce_map_out.empty())
        write_output(reduce_map_out, serialize(reduced.map));
      return kOk;
    }

    if (*restore_cmd) {
      auto map = parse_reduction_map(read_input(restore_map));
      auto matching = parse_matching(read_input(restore_in));
      write_output(restore_out, serialize(restore_matching(map, matching)));
      return kOk;
    }

    if (*minmax_cmd) {
      auto inst = parse_hrq(read_input(minmax_in));
      auto result = eliminate_min_quotas(inst);
      write_output(minmax_out, serialize(result.instance));
      std::cerr << "null hospital: " << result.null_hospital << "\n";
      return kOk;
    }

    if (*check_cmd)
      return run_check(check_property, check_instance, check_matching,
                       check_ml);

    if (*solve_cmd)
      return run_solve(solve_method, solve_instance, solve_ml, solve_all,
                       budget);

    if (*gen_setcover) {
      auto sc = parse_set_cover(read_input(setcover_in));
      write_output(setcover_out, serialize(gadget_from_set_cover(sc)));
      return kOk;
    }

    if (*gen_threesat) {
      auto f = parse_dimacs(read_input(threesat_in));
      write_output(threesat_out, serialize(gadget_from_3sat(f)));
      return kOk;
    }

    if (*gen_random) {
      if (random_model == "scdc") {
        scdc_params.acceptability_prob = prob;
        scdc_params.seed = seed;
        scdc_params.min_quota_mode = min_quota_mode == "random"
                                         ? MinQuotaMode::Random
                                         : MinQuotaMode::Zero;
        if (min_quota_mode != "zero" && min_quota_mode != "random")
          throw std::runtime_error("--min-quotas must be zero or random");
        write_output(random_out, serialize(gen_random_scdc(scdc_params)));
      } else if (random_model == "hrq") {
        hrq_params.acceptability_prob = prob;
        hrq_params.seed = seed;
        hrq_params.min_quota_mode = min_quota_mode == "random"
                                        ? MinQuotaMode::Random
                                        : MinQuotaMode::Zero;
        if (min_quota_mode != "zero" && min_quota_mode != "random")
          throw std::runtime_error("--min-quotas must be zero or random");
        write_output(random_out, serialize(gen_random_hrq(hrq_params)));
      } else {
        throw std::runtime_error("model must be scdc or hrq");
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  return kUsageError;
}
