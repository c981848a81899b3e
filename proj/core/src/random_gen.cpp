#include "matchdc/random_gen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace matchdc {

namespace {

std::string pad(int value, int width) {
  std::string digits = std::to_string(value);
  while (static_cast<int>(digits.size()) < width) digits.insert(0, "0");
  return digits;
}

int width_of(int count) {
  return static_cast<int>(std::to_string(count < 1 ? 1 : count).size());
}

}  // namespace

int Rng::uniform_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  std::uint64_t range = static_cast<std::uint64_t>(hi) - lo + 1;
  std::uint64_t limit = range * (UINT64_MAX / range);
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return lo + static_cast<int>(draw % range);
}

bool Rng::bernoulli(double p) {
  return (next() >> 11) * 0x1.0p-53 < p;
}

ScdcInstance gen_random_scdc(const RandomScdcParams& params) {
  if (params.n_students < 0 || params.n_schools < 0 || params.n_types < 0)
    throw std::invalid_argument("gen_random_scdc: negative counts");
  if (params.n_types > params.n_students)
    throw std::invalid_argument(
        "gen_random_scdc: n_types must not exceed n_students");
  if (!(params.acceptability_prob > 0.0) || params.acceptability_prob > 1.0)
    throw std::invalid_argument(
        "gen_random_scdc: acceptability_prob must lie in (0, 1]");

  Rng rng(params.seed);
  ScdcInstance inst;

  for (int t = 0; t < params.n_types; ++t)
    inst.type_names.push_back("t" + std::to_string(t + 1));

  const int sw = width_of(params.n_students);
  const int cw = width_of(params.n_schools);
  std::vector<Id> student_ids, school_ids;
  for (int i = 0; i < params.n_students; ++i)
    student_ids.push_back("s" + pad(i + 1, sw));
  for (int i = 0; i < params.n_schools; ++i)
    school_ids.push_back("c" + pad(i + 1, cw));

  for (const Id& sid : student_ids) {
    Student student;
    for (int t = 0; t < params.n_types; ++t)
      student.type_vector.bits.push_back(rng.bernoulli(0.5) ? 1 : 0);
    inst.students[sid] = std::move(student);
  }

  std::map<Id, std::vector<Id>> accepted_students;  // school -> students
  for (const Id& sid : student_ids) {
    std::vector<Id> accepted;
    for (const Id& cid : school_ids)
      if (rng.bernoulli(params.acceptability_prob)) {
        accepted.push_back(cid);
        accepted_students[cid].push_back(sid);
      }
    rng.shuffle(accepted);
    inst.students[sid].prefs.ranked = std::move(accepted);
  }

  for (const Id& cid : school_ids) {
    School school;
    school.capacity =
        params.n_students == 0 ? 1 : rng.uniform_int(1, params.n_students);
    for (int t = 0; t < params.n_types; ++t) {
      int max_q = rng.uniform_int(0, school.capacity);
      int min_q = params.min_quota_mode == MinQuotaMode::Zero
                      ? 0
                      : rng.uniform_int(0, max_q);
      school.max_quotas.push_back(max_q);
      school.min_quotas.push_back(min_q);
    }
    std::vector<Id> priority = accepted_students[cid];
    rng.shuffle(priority);
    school.priority.ranked = std::move(priority);
    inst.schools[cid] = std::move(school);
  }

  return inst;
}

HrqInstance gen_random_hrq(const RandomHrqParams& params) {
  if (params.n_doctors < 0 || params.n_hospitals < 0 || params.n_regions < 0)
    throw std::invalid_argument("gen_random_hrq: negative counts");
  if (!(params.acceptability_prob > 0.0) || params.acceptability_prob > 1.0)
    throw std::invalid_argument(
        "gen_random_hrq: acceptability_prob must lie in (0, 1]");

  Rng rng(params.seed);
  HrqInstance inst;

  const int dw = width_of(params.n_doctors);
  const int hw = width_of(params.n_hospitals);
  const int rw = width_of(params.n_regions);
  std::vector<Id> doctor_ids, hospital_ids;
  for (int i = 0; i < params.n_doctors; ++i)
    doctor_ids.push_back("d" + pad(i + 1, dw));
  for (int i = 0; i < params.n_hospitals; ++i)
    hospital_ids.push_back("h" + pad(i + 1, hw));

  for (const Id& did : doctor_ids) inst.doctors[did];

  std::map<Id, std::vector<Id>> accepted_doctors;
  for (const Id& did : doctor_ids) {
    std::vector<Id> accepted;
    for (const Id& hid : hospital_ids)
      if (rng.bernoulli(params.acceptability_prob)) {
        accepted.push_back(hid);
        accepted_doctors[hid].push_back(did);
      }
    rng.shuffle(accepted);
    inst.doctors[did].prefs.ranked = std::move(accepted);
  }

  for (const Id& hid : hospital_ids) {
    Hospital hospital;
    hospital.capacity =
        params.n_doctors == 0 ? 1 : rng.uniform_int(1, params.n_doctors);
    std::vector<Id> priority = accepted_doctors[hid];
    rng.shuffle(priority);
    hospital.priority.ranked = std::move(priority);
    inst.hospitals[hid] = std::move(hospital);
  }

  for (int r = 0; r < params.n_regions; ++r) {
    RegionSpec region;
    region.id = "r" + pad(r + 1, rw);
    for (const Id& hid : hospital_ids)
      if (rng.bernoulli(0.5)) region.hospitals.insert(hid);
    region.max_quota = rng.uniform_int(0, params.n_doctors);
    region.min_quota = params.min_quota_mode == MinQuotaMode::Zero
                           ? 0
                           : rng.uniform_int(0, region.max_quota);
    for (const Contract& y : inst.contracts())
      if (region.hospitals.count(y.institution)) region.priority.push_back(y);
    rng.shuffle(region.priority);
    inst.regions.push_back(std::move(region));
  }

  return inst;
}

}  // namespace matchdc
