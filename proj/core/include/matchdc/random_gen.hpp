#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "matchdc/model.hpp"

namespace matchdc {

// Deterministic randomness helpers on top of std::mt19937_64 (whose output
// sequence the standard pins down). Bounded draws use rejection sampling
// and probabilities a 53-bit mantissa, so instances reproduce bit-for-bit
// across platforms; std::uniform_int_distribution would not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform over [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  bool bernoulli(double p);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[uniform_int(0, static_cast<int>(i) - 1)]);
  }

 private:
  std::mt19937_64 engine_;
};

enum class MinQuotaMode { Zero, Random };

struct RandomScdcParams {
  int n_students = 4;
  int n_schools = 2;
  int n_types = 2;
  double acceptability_prob = 1.0;
  MinQuotaMode min_quota_mode = MinQuotaMode::Zero;
  std::uint64_t seed = 0;
};

// Seed-deterministic instance: type vectors uniform over {0,1}^T, each
// student-school contract present with acceptability_prob (listed on both
// sides, in independently shuffled order), quotas drawn with
// min <= max <= capacity. Requires n_types <= n_students.
ScdcInstance gen_random_scdc(const RandomScdcParams& params);

struct RandomHrqParams {
  int n_doctors = 4;
  int n_hospitals = 3;
  int n_regions = 2;
  double acceptability_prob = 1.0;
  MinQuotaMode min_quota_mode = MinQuotaMode::Zero;
  std::uint64_t seed = 0;
};

// Seed-deterministic regional-quota instance; regions are random hospital
// subsets with independently shuffled contract priorities (regional and
// hospital priorities may disagree).
HrqInstance gen_random_hrq(const RandomHrqParams& params);

}  // namespace matchdc
