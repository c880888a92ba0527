#include <catch_amalgamated.hpp>

#include <cmath>

#include "renbounds/verify.hpp"

using namespace renbounds;
using Catch::Approx;

TEST_CASE("coverage manifest is complete", "[verify]") {
  const std::vector<std::string> expected = {
      "normal_tail",       "phi_gap",        "sup_identities", "tail_envelopes",
      "stein_bounds",      "stein_derivatives", "g_case_bounds", "mills_cubic",
      "stein_enumeration", "shifted_pair_bound", "concentration",
      "besseen_enumeration", "constants",
  };
  CHECK(verify::check_names() == expected);
  for (const auto& name : expected) {
    // every registered check carries a human-readable claim
    const auto& reg = verify::registry();
    const auto it = std::find_if(reg.begin(), reg.end(),
                                 [&](const auto& p) { return p.first == name; });
    REQUIRE(it != reg.end());
  }
}

TEST_CASE("every check passes with the printed constants", "[verify]") {
  for (const auto& res : verify::run_all()) {
    INFO(res.name << " worst at " << res.worst_point);
    CHECK(res.violations == 0);
    CHECK(res.pass());
    CHECK(res.grid_size > 0);
  }
}

TEST_CASE("margins are reported and positive", "[verify]") {
  const auto r = verify::run_check("phi_gap");
  CHECK(r.worst_margin > 0.0);
  CHECK(!r.worst_point.empty());
  CHECK(r.slack == 1e-9);
  const auto env = verify::run_check("tail_envelopes");
  CHECK(env.worst_margin > 0.0);
  // the first envelope constant is tight: margin below 1e-3
  CHECK(env.worst_margin < 1e-3);
}

TEST_CASE("unknown check names are rejected", "[verify]") {
  CHECK_THROWS_AS(verify::run_check("nonsense"), ConfigError);
}

TEST_CASE("corrupted constants are caught with the offending point", "[verify]") {
  verify::Constants bad;
  bad.envelope_tail = 1.0;  // true envelope needs ~1.1756
  const auto r = verify::run_check("tail_envelopes", bad);
  CHECK(r.violations > 0);
  CHECK_FALSE(r.pass());
  CHECK(r.worst_margin < 0.0);
  CHECK(r.worst_point.find("z=") != std::string::npos);

  verify::Constants bad2;
  bad2.c2.large_z = 100.0;  // far below the printed constant
  const auto r2 = verify::run_check("constants", bad2);
  CHECK_FALSE(r2.pass());

  verify::Constants bad3;
  bad3.phi_gap_scale = 0.5;
  const auto r3 = verify::run_check("phi_gap", bad3);
  CHECK_FALSE(r3.pass());
}

TEST_CASE("stein enumeration rejects oversized product spaces", "[verify]") {
  // 3^13 > 1e6
  const auto fam = enumeration::SummandFamily::three_point(
      13, 1.0 / std::sqrt(2.0 * 13.0 * 0.05), 0.05);
  CHECK(fam.product_space() > 1e6);
}

TEST_CASE("sup identity values", "[verify]") {
  const auto r = verify::run_check("sup_identities");
  CHECK(r.pass());
  const double e = std::exp(1.0);
  CHECK(2.0 / e == Approx(0.7357588823).epsilon(1e-9));
  CHECK(16.0 / (e * e) == Approx(2.1653645317858).epsilon(1e-12));
}

TEST_CASE("endpoint spot values of the envelopes", "[verify]") {
  // z = 0: min(1/2, inf) * 1 = 0.5 <= 1.176
  CHECK(0.5 <= 1.176);
  // z = 2 endpoint of the exponential envelope
  CHECK(std::exp(-1.0) <= 16.0 / std::pow(std::exp(1.0), 1.5) / 9.0);
  // mills cubic at w = 0: sqrt(2pi)/2 <= 2
  CHECK(constants::sqrt_2pi * scaled_tail(0.0) == Approx(constants::sqrt_2pi / 2.0));
  CHECK(constants::sqrt_2pi / 2.0 <= 2.0);
}

TEST_CASE("shifted pair constant is evaluated and logged", "[verify]") {
  const double c41 = 25.8 + 20.0 * std::exp(std::exp(2.0) - 2.0) / constants::sqrt_2pi;
  CHECK(c41 == Approx(1773.1398754746792311).epsilon(1e-12));
  const auto r = verify::run_check("constants");
  CHECK(r.pass());
}

TEST_CASE("kbar integral identity routes", "[verify]") {
  // symmetric family: no mass above the truncation, the identity gives 1
  const auto sym = enumeration::SummandFamily::symmetric_two_point(8);
  CHECK(sym.n() * enumeration::kbar_integral(sym.truncated()) ==
        Approx(1.0).margin(1e-12));
  // left-heavy Bernoulli: two-sided beta2 is large but the one-sided bite is 0
  const auto left = enumeration::SummandFamily::bernoulli(6, 0.9);
  CHECK(left.profile().beta2 == Approx(0.9).margin(1e-12));
  CHECK(left.one_sided_tail_second() == 0.0);
  CHECK(left.n() * enumeration::kbar_integral(left.truncated()) ==
        Approx(1.0).margin(1e-12));
  // right-heavy Bernoulli: the one-sided bite matches q
  const auto right = enumeration::SummandFamily::bernoulli(6, 0.1);
  CHECK(right.one_sided_tail_second() == Approx(0.9).margin(1e-12));
  CHECK(right.n() * enumeration::kbar_integral(right.truncated()) ==
        Approx(0.1).margin(1e-12));
}
