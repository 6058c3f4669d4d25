#include "doctest.h"

#include "modinv/error.hpp"
#include "modinv/registry.hpp"

using namespace modinv;

namespace {

VerificationReport run(const std::string& name, Json params)
{
  return run_check(name, params, RunOptions{});
}

} // namespace

TEST_CASE("polynomial JSON round trip")
{
  Field F = Field::from_order(4);
  VariableSpace S = VariableSpace::symplectic(2);
  Polynomial f = parse_polynomial(F, S, "t*y1^2*x2 + x1^3 + (t+1)*y2");
  Json j = to_json(f);
  CHECK(j["degree"] == 3);
  CHECK(j["convention"] == "symplectic");
  Polynomial g = polynomial_from_json(Json::parse(j.dump()));
  CHECK(g == f);
  CHECK_THROWS_AS(polynomial_from_json(Json{{"terms", 1}}), Error);
}

TEST_CASE("space and group specs")
{
  CHECK(space_from_spec("gluing:2,3").size() == 5);
  CHECK(space_from_spec("symplectic:2").names().front() == "y1");
  CHECK_THROWS_AS(space_from_spec("torus:2"), Error);

  Field F2 = Field::from_order(2);
  CHECK(group_from_spec(F2, Json{{"kind", "sp"}, {"m", 2}}).enumerated().order() == 720);
  CHECK(group_from_spec(F2, Json{{"kind", "para"}, {"partition", {1, 1, 1}}}).enumerated().order() == 8);
  CHECK_THROWS_AS(group_from_spec(F2, Json{{"kind", "spin"}}), Error);

  GluingGroup g = gluing_from_spec(F2, Json::parse(R"({"type":"glue","g1":{"kind":"u","n":2},
      "g2":{"kind":"u","n":2},"module":{"kind":"full"}})"));
  CHECK(g.realized.enumerated().order() == 64);
  CHECK(gluing_from_spec(F2, Json{{"type", "thin"}, {"p", 2}, {"r", 1}}).realized.dim() == 3);
}

TEST_CASE("group order and stabilizer checks")
{
  CHECK(run("group_order", {{"kind", "sp"}, {"m", 2}, {"q", 2}, {"expected", 720}}).status == Status::Pass);
  auto bad = run("group_order", {{"kind", "sp"}, {"m", 2}, {"q", 2}, {"expected", 721}});
  CHECK(bad.status == Status::Fail);
  CHECK(bad.witness.find("721") != std::string::npos);
  CHECK(run("stabilizer_order", {{"case", "xi1_gl2"}, {"q", 3}, {"expected", 24}}).status == Status::Pass);
  CHECK(run("stabilizer_order", {{"case", "o3_delta"}, {"q", 3}, {"expected", 48}}).status == Status::Pass);
}

TEST_CASE("family checks and negative controls")
{
  CHECK(run("family", {{"family", "eapg"}, {"m", 2}, {"q", 2}}).status == Status::Pass);
  auto wrong = run("family", {{"family", "eapg"}, {"m", 2}, {"q", 2}, {"perturb_degree", {{"index", 0}, {"by", 1}}}});
  CHECK(wrong.status == Status::Fail);
  CHECK(!wrong.witness.empty());

  Json para = {{"family", "parabolic_gl"}, {"partition", {1, 1}}, {"q", 2}};
  CHECK(run("degree_product", para).status == Status::Pass);
  para["drop"] = 0;
  CHECK(run("degree_product", para).status == Status::Fail);
}

TEST_CASE("transfer image checks")
{
  CHECK(run("transfer_image", {{"p", 2}, {"degree_bound", 8}}).status == Status::Pass);
  auto r = run("transfer_image", {{"p", 2}, {"degree_bound", 8}, {"tau_power", 1}});
  CHECK(r.status == Status::Fail);
  CHECK(!r.witness.empty());
}

TEST_CASE("structural checks")
{
  CHECK(run("semidirect_law", {{"q", 2}}).status == Status::Pass);
  CHECK(run("semidirect_law", {{"q", 3}, {"samples", 500}}).status == Status::Pass);
  CHECK(run("thin_gluing", {{"p", 2}, {"r", 1}}).status == Status::Pass);
  CHECK(run("parabolic_family", {{"q", 2}}).status == Status::Pass);
  CHECK(run("transfer_factorization", {{"q", 2}, {"samples", 3}}).status == Status::Pass);
  CHECK(run("gk2_not_complete_intersection", Json::object()).status == Status::Skipped);
}

TEST_CASE("property suites")
{
  for (int q : {2, 3, 4, 9})
    CHECK(run("field_axioms", {{"q", q}}).status == Status::Pass);
  CHECK(run("action_compat", {{"q", 3}, {"samples", 10}}).status == Status::Pass);
  CHECK(run("additivity", {{"q", 2}}).status == Status::Pass);
  CHECK(run("additivity", {{"q", 3}}).status == Status::Pass);
  CHECK(run("transfer_module", {{"q", 2}, {"samples", 4}}).status == Status::Pass);
  CHECK(run("moore_dickson", {{"n", 3}, {"q", 2}}).status == Status::Pass);
}

TEST_CASE("every check name is listed once")
{
  auto names = check_names();
  std::sort(names.begin(), names.end());
  CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
  CHECK(std::find(names.begin(), names.end(), "u_lem") != names.end());
  CHECK_THROWS_AS(run("no_such_check", Json::object()), Error);
}

TEST_CASE("scenario parsing rejects malformed input")
{
  CHECK_THROWS_AS(parse_scenario("{"), Error);
  CHECK_THROWS_AS(parse_scenario(R"({"name":"x","checks":[{"check":"nope"}]})"), Error);
  CHECK_THROWS_AS(parse_scenario(R"({"name":"x","budgets":{"cap":-1},"checks":[]})"), Error);
  CHECK_THROWS_AS(parse_scenario(R"({"name":"x","checks":[{"check":"u_lem","expect":"maybe"}]})"), Error);
  try {
    parse_scenario("[1,2");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}

TEST_CASE("scenario runner keeps order and computes the exit code")
{
  const char* text = R"({
    "name": "mixed",
    "field": {"p": 2, "r": 1},
    "budgets": {"cap": 100000, "degree_bound": 8},
    "workers": 3,
    "checks": [
      {"check": "group_order", "params": {"kind": "u", "n": 3, "expected": 8}},
      {"check": "group_order", "params": {"kind": "u", "n": 3, "expected": 9}, "expect": "fail"},
      {"check": "ck_sp4"},
      {"check": "moore_dickson", "params": {"n": 2}},
      {"check": "group_order", "params": {"kind": "gl", "n": 5}}
    ]})";
  Scenario s = parse_scenario(text);
  CHECK(s.checks[2].params["q"] == 2);
  CHECK(s.workers == 3);
  ScenarioResult r = run_scenario(s);
  REQUIRE(r.reports.size() == 5);
  CHECK(r.reports[0].status == Status::Pass);
  CHECK(r.reports[1].status == Status::Fail);
  CHECK(r.reports[2].check == "ck_sp4");
  CHECK(r.reports[4].status == Status::Skipped);
  CHECK(r.exit_code == 0);
  CHECK(summary_table(s, r).find("5/5 as expected") != std::string::npos);

  s.checks[1].expect = Status::Pass;
  CHECK(run_scenario(s).exit_code == 1);
}

TEST_CASE("module errors in a scenario become failures with a witness")
{
  Scenario s = parse_scenario(R"({"name":"err","checks":[
      {"check":"u_lem","params":{"m":9,"k":1,"i":0,"j":1,"q":2}}]})");
  ScenarioResult r = run_scenario(s);
  CHECK(r.reports[0].status == Status::Fail);
  CHECK(r.reports[0].witness.rfind("error", 0) == 0);
  CHECK(r.exit_code == 1);
}
