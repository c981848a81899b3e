#include <doctest.h>

#include "matchdc/model.hpp"
#include "matchdc/random_gen.hpp"
#include "support.hpp"

using namespace matchdc;
using namespace testsupport;

TEST_CASE("preference order ranks and prefers") {
  PreferenceOrder po{{"a", "b", "c"}};
  CHECK(po.contains("b"));
  CHECK_FALSE(po.contains("z"));
  CHECK(po.rank_of("a") == 0);
  CHECK(po.rank_of("z") == std::nullopt);
  CHECK(po.prefers("a", "c"));
  CHECK(po.prefers("a", "z"));     // ranked beats unranked
  CHECK_FALSE(po.prefers("z", "a"));
}

TEST_CASE("matching keeps a sorted deduplicated pair set") {
  Matching m(
      {{"s2", "c"}, {"s1", "c"}, {"s2", "c"}, {"s1", "b"}});
  CHECK(m.size() == 3);
  CHECK(m.pairs().front() == Contract{"s1", "b"});
  CHECK(m.contains({"s2", "c"}));
  m.erase({"s2", "c"});
  CHECK_FALSE(m.contains({"s2", "c"}));
  m.insert({"s2", "c"});
  m.insert({"s2", "c"});
  CHECK(m.size() == 3);
  CHECK(m.assignment_of("s1") == Id{"b"});
  CHECK(m.assignment_of("zz") == std::nullopt);
  CHECK(m.agents_at("c") == std::vector<Id>{"s1", "s2"});
}

TEST_CASE("type vector key") {
  CHECK(TypeVector{{1, 0, 1}}.key() == "101");
  CHECK(TypeVector{{}}.key().empty());
}

TEST_CASE("validate_scdc accepts the running example and the empty instance") {
  CHECK(validate_scdc(example1_scdc()).ok());
  CHECK(validate_scdc(ScdcInstance{}).ok());
}

TEST_CASE("validate_scdc rejects min quota above max quota") {
  auto inst = example1_scdc();
  inst.schools["c"].min_quotas = {2, 0};
  inst.schools["c"].max_quotas = {1, 1};
  auto report = validate_scdc(inst);
  REQUIRE_FALSE(report.ok());
  CHECK(report.errors.front().find("min quota exceeds max") !=
        std::string::npos);
}

TEST_CASE("validate_scdc rejects structural defects") {
  SUBCASE("more types than students") {
    ScdcInstance inst;
    inst.type_names = {"t1", "t2"};
    Student s;
    s.type_vector.bits = {0, 1};
    inst.students["s1"] = s;
    CHECK_FALSE(validate_scdc(inst).ok());
  }
  SUBCASE("dangling school id in preferences") {
    auto inst = example1_scdc();
    inst.students["s1"].prefs.ranked.push_back("ghost");
    CHECK_FALSE(validate_scdc(inst).ok());
  }
  SUBCASE("duplicate ranking") {
    auto inst = example1_scdc();
    inst.schools["c"].priority.ranked.push_back("s1");
    CHECK_FALSE(validate_scdc(inst).ok());
  }
  SUBCASE("one-sided listing") {
    auto inst = example1_scdc();
    // s5 ranks c but c does not rank s5
    Student s;
    s.type_vector.bits = {0, 0};
    s.prefs.ranked = {"c"};
    inst.students["s5"] = s;
    CHECK_FALSE(validate_scdc(inst).ok());
  }
  SUBCASE("quota beyond the desk-scale bound") {
    auto inst = example1_scdc();
    inst.schools["c"].capacity = kMaxQuota + 1;
    CHECK_FALSE(validate_scdc(inst).ok());
  }
  SUBCASE("non-binary type flag") {
    auto inst = example1_scdc();
    inst.students["s1"].type_vector.bits = {2, 0};
    CHECK_FALSE(validate_scdc(inst).ok());
  }
}

TEST_CASE("validate_hrq accepts region-free instances and checks coverage") {
  HrqInstance inst;
  inst.doctors["d1"].prefs.ranked = {"h1"};
  Hospital h;
  h.capacity = 1;
  h.priority.ranked = {"d1"};
  inst.hospitals["h1"] = h;
  CHECK(validate_hrq(inst).ok());

  RegionSpec region;
  region.id = "r1";
  region.hospitals = {"h1"};
  region.max_quota = 1;
  SUBCASE("region priority missing a contract") {
    inst.regions = {region};  // empty priority misses (d1, h1)
    auto report = validate_hrq(inst);
    REQUIRE_FALSE(report.ok());
    CHECK(report.errors.front().find("missing contract") != std::string::npos);
  }
  SUBCASE("covering priority passes") {
    region.priority = {{"d1", "h1"}};
    inst.regions = {region};
    CHECK(validate_hrq(inst).ok());
  }
  SUBCASE("priority entry outside the region") {
    region.priority = {{"d1", "h1"}};
    inst.doctors["d2"].prefs.ranked = {"h2"};
    Hospital h2;
    h2.capacity = 1;
    h2.priority.ranked = {"d2"};
    inst.hospitals["h2"] = h2;
    region.priority.push_back({"d2", "h2"});
    inst.regions = {region};
    auto report = validate_hrq(inst);
    REQUIRE_FALSE(report.ok());
    CHECK(report.errors.front().find("outside the region") !=
          std::string::npos);
  }
  SUBCASE("duplicate region ids") {
    region.priority = {{"d1", "h1"}};
    inst.regions = {region, region};
    CHECK_FALSE(validate_hrq(inst).ok());
  }
  SUBCASE("min above max") {
    region.priority = {{"d1", "h1"}};
    region.min_quota = 2;
    inst.regions = {region};
    CHECK_FALSE(validate_hrq(inst).ok());
  }
}

namespace {

RegionSpec region_over(Id id, std::set<Id> hospitals) {
  RegionSpec r;
  r.id = std::move(id);
  r.hospitals = std::move(hospitals);
  r.max_quota = 1;
  return r;
}

}  // namespace

TEST_CASE("is_partition") {
  std::set<Id> hospitals = {"h1", "h2"};
  CHECK(is_partition({region_over("a", {"h1"}), region_over("b", {"h2"})},
                     hospitals));
  CHECK_FALSE(is_partition(
      {region_over("a", {"h1", "h2"}), region_over("b", {"h2"})}, hospitals));
  CHECK_FALSE(is_partition({region_over("a", {"h1"})}, hospitals));
  CHECK(is_partition({}, {}));
}

TEST_CASE("is_hierarchy") {
  std::set<Id> hospitals = {"h1", "h2"};
  CHECK(is_hierarchy({region_over("a", {"h1", "h2"}), region_over("b", {"h1"}),
                      region_over("c", {"h2"})},
                     hospitals));
  // Overlapping but non-nested pair
  std::set<Id> three = {"h1", "h2", "h3"};
  CHECK_FALSE(is_hierarchy(
      {region_over("a", {"h1", "h2"}), region_over("b", {"h2", "h3"})},
      three));
}

TEST_CASE("the running example's region family is neither partition nor hierarchy") {
  // r covers everything, r1 and r2 overlap in the (1,1) hospital.
  std::set<Id> hospitals = {"h00", "h01", "h10", "h11"};
  std::vector<RegionSpec> regions = {
      region_over("r", {"h00", "h01", "h10", "h11"}),
      region_over("r1", {"h10", "h11"}),
      region_over("r2", {"h01", "h11"}),
  };
  CHECK_FALSE(is_partition(regions, hospitals));
  CHECK_FALSE(is_hierarchy(regions, hospitals));
}

TEST_CASE("every partition is a hierarchy") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.uniform_int(0, 6);
    std::set<Id> hospitals;
    for (int i = 0; i < n; ++i) hospitals.insert("h" + std::to_string(i));
    // Deal hospitals into up to 3 buckets; drop empty buckets.
    std::vector<std::set<Id>> buckets(rng.uniform_int(1, 3));
    for (const Id& hid : hospitals)
      buckets[rng.uniform_int(0, static_cast<int>(buckets.size()) - 1)]
          .insert(hid);
    std::vector<RegionSpec> regions;
    for (std::size_t b = 0; b < buckets.size(); ++b)
      if (!buckets[b].empty())
        regions.push_back(region_over("r" + std::to_string(b), buckets[b]));
    REQUIRE(is_partition(regions, hospitals));
    CHECK(is_hierarchy(regions, hospitals));
  }
}
