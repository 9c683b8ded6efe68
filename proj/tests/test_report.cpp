#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <spincorr/report.hpp>
#include <spincorr/runs.hpp>

#include <json.hpp>

#include <sstream>

using namespace spincorr;

TEST_CASE("one-node scenario at t=1 yields the 2,2,1,1 quartet") {
  Scenario s = one_node_scenario();
  Propagator prop = scenario_propagator(s);
  CorrelationReport r = correlation_report(s, prop, 1.0);
  CHECK(r.d_tilde_a == 2);
  CHECK(r.e_aa == 2);
  CHECK(r.e_ab == 2);
  CHECK(r.e_ab_min == 1);
  CHECK(r.removable == 1);
  CHECK(r.consistent);
  CHECK(r.min_path == "standard");
  CHECK(to_string(r.e_aa_norm) == "1");
  CHECK(to_string(r.e_ab_min_norm) == "1/2");
  CHECK(r.sv_transfer.size() == 3);
  CHECK(r.phi_samples.size() == 5);
}

TEST_CASE("flat sender spectrum kills every measure") {
  Scenario s = one_node_scenario();
  s.lambda_a = rvec(2);
  s.lambda_a << 0.5, 0.5;
  Propagator prop = scenario_propagator(s);
  CorrelationReport r = correlation_report(s, prop, 1.0);
  CHECK(r.e_aa == 0);
  CHECK(r.e_ab == 0);
  CHECK(r.e_ab_min == 0);
  CHECK(r.removable == 0);
}

TEST_CASE("paired receiver eigenvalues split once evolution mixes them") {
  rvec la(4), lb(4);
  la << 4.0 / 15, 4.0 / 15, 4.0 / 15, 1.0 / 5;
  lb << 4.0 / 15, 4.0 / 15, 7.0 / 30, 7.0 / 30;
  Scenario s = two_node_scenario(la, lb);
  Propagator prop = scenario_propagator(s);

  // at t=4 the evolved receiver spectrum is generic, all three coefficient
  // directions alive
  CorrelationReport r = correlation_report(s, prop, 4.0, 3);
  CHECK(!r.min_degenerate);
  CHECK(r.min_path == "standard");
  CHECK(r.e_ab_min == 3);

  // at t=0 the pairs are still exact, which forces the clustered treatment,
  // and nothing has arrived yet
  CorrelationReport r0 = correlation_report(s, prop, 0.0, 3);
  CHECK(r0.min_degenerate);
  CHECK(r0.min_path == "reduced");
  CHECK(r0.e_ab == 0);
  CHECK(r0.e_ab_min == 0);
}

TEST_CASE("report json parses back with exact fields") {
  Scenario s = one_node_scenario();
  Propagator prop = scenario_propagator(s);
  CorrelationReport r = correlation_report(s, prop, 1.0);
  nlohmann::json j = nlohmann::json::parse(report_json(r));
  CHECK(j["t"] == 1.0);
  CHECK(j["e_aa"] == 2);
  CHECK(j["e_ab"] == 2);
  CHECK(j["e_ab_min"] == 1);
  CHECK(j["removable"] == 1);
  CHECK(j["e_ab_norm"] == "1");
  CHECK(j["min_degenerate"] == false);
  CHECK(j["seed"] == 1);
  CHECK(j["singular_values"]["transfer"].size() == 3);
  CHECK(j["phi_samples"].size() == 5);
}

TEST_CASE("checks compare exactly at zero tolerance and loosely otherwise") {
  Check exact{"cell", 3, 3.0, 0};
  CHECK(exact.ok());
  Check off{"cell", 3, 2.999999, 0};
  CHECK(!off.ok());
  Check loose{"root", 9.070, 9.0703, 1e-3};
  CHECK(loose.ok());

  RunResult rr;
  rr.checks = {exact, off};
  CHECK(!rr.ok());
  CHECK(rr.diff().find("cell") != std::string::npos);
  CHECK(rr.table().find("ok") != std::string::npos);
  CHECK(rr.table().find("FAIL") != std::string::npos);
}

TEST_CASE("root run reproduces the four critical times") {
  RunResult rr = run_roots();
  CHECK(rr.ok());
}

TEST_CASE("single-node table run crosses all rank triggers") {
  RunResult rr = run_table1();
  CHECK(rr.ok());
  bool saw_revival = false;
  for (const Check& c : rr.checks)
    if (c.label.find("gamma") != std::string::npos) saw_revival = true;
  CHECK(saw_revival);

  // a receiver rotation by pi/4 collapses the transfer rank
  RunResult rot = run_table1(0.75, std::acos(-1.0) / 4);
  CHECK(rot.ok());
}

TEST_CASE("two-node-block table run covers the four rank regimes") {
  RunResult rr = run_table2();
  CHECK(rr.ok());
  int rank_rows = 0;
  for (const Check& c : rr.checks)
    if (c.label.find("rank") != std::string::npos) ++rank_rows;
  CHECK(rank_rows >= 4);
}

TEST_CASE("long-chain rows conserve probability and follow the amplitude") {
  TimeGrid grid{0, 10, 0.5};
  std::vector<LongChainRow> rows = run_longchain(4, 1, 1, grid);
  REQUIRE(rows.size() == 21);
  for (const LongChainRow& row : rows) {
    CHECK(row.p == doctest::Approx(1.0).epsilon(1e-11));
    if (row.f_abs > 1e-6) CHECK(row.e_ab == 2);
  }
  std::ostringstream os;
  write_longchain_csv(os, rows);
  CHECK(os.str().substr(0, os.str().find('\n')) == "t,f_abs,p,e_ab,e_ab_min");
}
