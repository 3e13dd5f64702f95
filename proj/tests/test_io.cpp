#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "longsteps/io.hpp"

using namespace longsteps;

namespace {
const ConstantsTable<double>& tab = default_constants();
}

TEST_CASE("format_real round trips exactly") {
  CHECK(format_real(0.125) == "0.125");
  CHECK(format_real(1.5) == "1.5");
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> expo(-30, 30);
  for (int rep = 0; rep < 2000; ++rep) {
    const double v = n(rng) * std::pow(10.0, expo(rng));
    const std::string s = format_real(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("schedule json shape") {
  const auto s = right_heavy_schedule(2, tab);
  const json j = schedule_to_json(s);
  CHECK(j["kind"] == "right");
  CHECK(j["k"] == 2);
  REQUIRE(j["entries"].size() == 3);
  // entries are decimal strings that parse back bit-identically
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::stod(j["entries"][i].get<std::string>()) == s.entries[i]);
  CHECK(j["entries"][2] == "1.5");
}

TEST_CASE("schedule csv shape") {
  const auto s = silver_schedule(1, tab);
  const std::string csv = schedule_to_csv(s);
  CHECK(csv == "index,entry\n0," + format_real(std::sqrt(2.0)) + "\n");
}

TEST_CASE("trajectory json shape") {
  const DiagonalQuadratic<double> fn((VectorX<double>(1) << 1.0).finished(), 1.0);
  const auto t = gd_rollout(fn, (VectorX<double>(1) << 1.0).finished(),
                            right_heavy_schedule(1, tab));
  const json j = trajectory_to_json(t, "right/1");
  CHECK(j["L"] == 1.0);
  CHECK(j["schedule_ref"] == "right/1");
  REQUIRE(j["points"].size() == 2);
  CHECK(j["points"][1]["x"][0] == -0.5);
  CHECK(j["points"][1]["f"] == 0.125);
  REQUIRE(!j["star"].is_null());
  CHECK(j["star"]["f"] == 0.0);
}

TEST_CASE("certificate json export") {
  const json j = certificate_to_json(build_B(2, tab));
  CHECK(j["label"] == "B");
  CHECK(j["k"] == 2);
  REQUIRE(j["entries"].size() == 4);
  CHECK(j["entries"][0][1] == 1.0);
  CHECK_THROWS_AS(certificate_to_json(build_B(9, tab)), std::invalid_argument);
}

TEST_CASE("verification report csv") {
  IdentitySuiteConfig<double> cfg;
  cfg.k_max = 2;
  cfg.dims = {2};
  cfg.seeds_per_cell = 2;
  const auto rows = run_identity_suite(cfg, tab);
  const std::string csv = cert_reports_to_csv(rows);
  CHECK(csv.rfind("label,k,d,seed,lhs,rhs,rel_err,pass\n", 0) == 0);
  // one header plus one line per row
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(rows.size()));
  CHECK(csv.find(",1\n") != std::string::npos);  // passes present
}

TEST_CASE("reference table serializers") {
  const auto rows = reference_table(tab);
  const std::string csv = reference_table_to_csv(rows);
  CHECK(csv.rfind("N,ours,silver_ref,bnb_ref\n", 0) == 0);
  CHECK(csv.find("1,0.125,0.182,0.125\n") != std::string::npos);
  const json j = reference_table_to_json(rows);
  CHECK(j[0]["N"] == 1);
  CHECK(j[0]["ours"] == 0.125);
  CHECK(j[4]["N"] == 31);
}

TEST_CASE("restart csv") {
  const DiagonalQuadratic<double> fn((VectorX<double>(1) << 1.0).finished(), 1.0);
  const auto res = restart_run(fn, 1.0, 1, 2, (VectorX<double>(1) << 1.0).finished(), tab);
  const std::string csv = restart_to_csv(res);
  CHECK(csv.rfind("sweep,gap,ratio\n", 0) == 0);
  CHECK(csv.find("0,0.5,\n") != std::string::npos);  // initial gap, no ratio
  CHECK(csv.find("1,0.125,4\n") != std::string::npos);
}
