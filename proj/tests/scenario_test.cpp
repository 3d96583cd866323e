// Scenario layer: document parsing (TOML-like and JSON forms), task
// validation against the op catalogue, expected-value parsers, object
// construction, and end-to-end runs including the shipped scenario files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <extscope/scenario.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace extscope;

namespace {

ScenarioDoc parse(const std::string& text) {
  return parse_scenario_text(text);
}

PolyRing<RationalField> qring() {
  return make_ring(RationalField{}, {"x", "y", "z"});
}

}  // namespace

TEST_CASE("document text parses names, objects, tasks, and caps") {
  ScenarioDoc doc = parse(
      "name = \"demo\"\n"
      "ring = \"QQ[x,y]\"\n"
      "degree_cap = 25\n"
      "description = \"free text\"  # trailing comment\n"
      "\n"
      "[objects]\n"
      "M = \"x\"  # comments end a line\n"
      "N = \"ideal: x, y\"\n"
      "\n"
      "[[task]]\n"
      "op = \"mu\"\n"
      "module = \"M\"\n"
      "expect = 1\n"
      "\n"
      "[[task]]\n"
      "op = \"depth\"\n"
      "module = \"N\"\n");
  CHECK(doc.name == "demo");
  CHECK(doc.ring == "QQ[x,y]");
  REQUIRE(doc.degree_cap.has_value());
  CHECK(*doc.degree_cap == 25);
  REQUIRE(doc.objects.size() == 2);
  CHECK(doc.objects.at("M") == "x");
  CHECK(doc.objects.at("N") == "ideal: x, y");
  REQUIRE(doc.tasks.size() == 2);
  CHECK(doc.tasks[0].kv.at("op").s == "mu");
  CHECK(doc.tasks[0].kv.at("expect").kind == TValue::Int);
  CHECK(doc.tasks[0].kv.at("expect").i == 1);
  CHECK(doc.tasks[1].kv.at("op").s == "depth");
}

TEST_CASE("value literals: strings, integers, booleans") {
  ScenarioDoc doc = parse(
      "ring = \"QQ[x]\"\n"
      "[[task]]\n"
      "op = \"resolve\"\n"
      "module = \"x\"\n"
      "window = -3\n"
      "expect_complete = true\n");
  const auto& kv = doc.tasks[0].kv;
  CHECK(kv.at("module").kind == TValue::Str);
  CHECK(kv.at("window").kind == TValue::Int);
  CHECK(kv.at("window").i == -3);
  CHECK(kv.at("expect_complete").kind == TValue::Bool);
  CHECK(kv.at("expect_complete").b == true);
}

TEST_CASE("malformed documents are rejected") {
  // Unknown section header.
  CHECK_THROWS_AS(parse("[nonsense]\n"), ParseError);
  // A line without '='.
  CHECK_THROWS_AS(parse("name \"demo\"\n"), ParseError);
  // Key with illegal characters.
  CHECK_THROWS_AS(parse("na-me = \"x\"\n"), ParseError);
  // Unknown top-level key.
  CHECK_THROWS_AS(parse("color = \"blue\"\n"), ParseError);
  // Unterminated string.
  CHECK_THROWS_AS(parse("name = \"demo\n"), ParseError);
  // Bare words must be quoted.
  CHECK_THROWS_AS(parse("name = demo\n"), ParseError);
  // Empty value.
  CHECK_THROWS_AS(parse("name =\n"), ParseError);
  // Duplicate object name.
  CHECK_THROWS_AS(parse("[objects]\nM = \"x\"\nM = \"y\"\n"), ParseError);
  // Duplicate key inside one task.
  CHECK_THROWS_AS(parse("ring = \"QQ[x]\"\n[[task]]\nop = \"mu\"\n"
                        "module = \"x\"\nmodule = \"x\"\n"),
                  ParseError);
  // Tasks declared without a ring.
  CHECK_THROWS_AS(
      parse_scenario_text("[[task]]\nop = \"mu\"\nmodule = \"x\"\n"),
      ParseError);
  // A ring that does not parse fails fast.
  CHECK_THROWS_AS(parse("ring = \"QQ[\"\n"), ParseError);
}

TEST_CASE("a document with no tasks defaults its ring") {
  ScenarioDoc doc = parse("name = \"idle\"\n");
  CHECK(doc.ring == "QQ[x,y,z]");
  CHECK(doc.tasks.empty());
  ScenarioReport rep = run_scenario_doc(doc);
  CHECK(rep.all_pass);
  CHECK(rep.tasks.empty());
}

TEST_CASE("task validation knows the op catalogue") {
  auto task = [](const std::string& body) {
    return "ring = \"QQ[x,y,z]\"\n[[task]]\n" + body;
  };
  // Missing op entirely.
  CHECK_THROWS_AS(parse(task("module = \"x\"\n")), ParseError);
  // Unknown op.
  CHECK_THROWS_AS(parse(task("op = \"frobnicate\"\nmodule = \"x\"\n")),
                  ParseError);
  // A key the op does not accept.
  CHECK_THROWS_AS(parse(task("op = \"mu\"\nmodule = \"x\"\nwindow = 3\n")),
                  ParseError);
  // A required key is missing ('ext' needs 'i').
  CHECK_THROWS_AS(parse(task("op = \"ext\"\nmodule = \"x\"\n")), ParseError);
  // The same body with the key present is fine.
  CHECK_NOTHROW(parse(task("op = \"ext\"\nmodule = \"x\"\ni = 1\n")));
  // Per-task degree_cap is always allowed.
  CHECK_NOTHROW(parse(task("op = \"mu\"\nmodule = \"x\"\ndegree_cap = 30\n")));
}

TEST_CASE("integer lists and prime lists parse strictly") {
  CHECK(detail::parse_int_list("1, 2, 1") ==
        std::vector<long long>{1, 2, 1});
  CHECK(detail::parse_int_list(" -3 ") == std::vector<long long>{-3});
  CHECK_THROWS_AS(detail::parse_int_list("1,,2"), ParseError);

  auto R = qring();
  auto primes = detail::parse_prime_list(R, "(x); (y, z)");
  REQUIRE(primes.size() == 2);
  CHECK(primes.count(VarPrime{0}) == 1);
  CHECK(primes.count(VarPrime{1, 2}) == 1);
  // The zero prime is written as "(0)" or "()".
  auto zero1 = detail::parse_prime_list(R, "(0)");
  auto zero2 = detail::parse_prime_list(R, "()");
  REQUIRE(zero1.size() == 1);
  CHECK(zero1.count(VarPrime{}) == 1);
  CHECK(zero1 == zero2);
  // Entries must be single variables in parentheses.
  CHECK_THROWS_AS(detail::parse_prime_list(R, "x"), ParseError);
  CHECK_THROWS_AS(detail::parse_prime_list(R, "(x*y)"), ParseError);
}

TEST_CASE("series text covers Laurent numerators and standard denominators") {
  // Plain integers and juxtaposed coefficients.
  HilbertSeries a = detail::hs_parse("2t - t^2");
  CHECK(a.denom.empty());
  REQUIRE(a.numer.size() == 2);
  CHECK(a.numer.at(1) == 2);
  CHECK(a.numer.at(2) == -1);

  // Negative exponents appear on bare powers of t.
  HilbertSeries b = detail::hs_parse("t^-3 + 1");
  CHECK(b.numer.at(-3) == 1);
  CHECK(b.numer.at(0) == 1);

  // Denominator factors multiply out as weights, powers expand.
  HilbertSeries c = detail::hs_parse("1/(1-t)^2 * (1-t^3)");
  CHECK(c.numer.at(0) == 1);
  REQUIRE(c.denom.size() == 3);
  CHECK(std::count(c.denom.begin(), c.denom.end(), 1) == 2);
  CHECK(std::count(c.denom.begin(), c.denom.end(), 3) == 1);

  // Parenthesised numerator arithmetic.
  HilbertSeries d = detail::hs_parse("(1 - t)(1 + t)");
  CHECK(d.numer.at(0) == 1);
  CHECK(d.numer.at(2) == -1);
  CHECK(d.numer.count(1) == 0);

  // Round trip: printing a computed series re-parses to an equal one.
  auto R = qring();
  auto M = cyclic_module(R, {parse_poly(R, "x*y"), parse_poly(R, "x*z")}, "M");
  HilbertSeries h = hilbert_series(M, GBOptions{});
  CHECK(hs_equal(h, detail::hs_parse(hs_str(h))));
  CHECK(hs_equal(h, detail::hs_parse("(1 - 2*t^2 + t^3)/(1-t)^3")));

  // Rejected shapes.
  CHECK_THROWS_AS(detail::hs_parse("1/(1+t)"), ParseError);
  CHECK_THROWS_AS(detail::hs_parse("1/(2-t)"), ParseError);
  CHECK_THROWS_AS(detail::hs_parse("1/(1-t)/(1-t)"), ParseError);
  CHECK_THROWS_AS(detail::hs_parse("t +"), ParseError);
  CHECK_THROWS_AS(detail::hs_parse("(1-t"), ParseError);
  CHECK_THROWS_AS(detail::hs_parse("x"), ParseError);
  // Negative exponents on parenthesised factors stay rejected.
  CHECK_THROWS_AS(detail::hs_parse("(1-t)^-1"), ParseError);
}

TEST_CASE("object sources build every supported module form") {
  auto R = qring();
  GBOptions opts;

  auto zero = detail::build_object(R, "0", "Z", opts);
  CHECK(zero.kind == detail::ScenarioObject<RationalField>::Zero);
  CHECK(module_is_zero(zero.module));

  auto bare = detail::build_object(R, "x*y, x*z", "M", opts);
  CHECK(bare.kind == detail::ScenarioObject<RationalField>::Cyclic);
  CHECK(bare.gens.size() == 2);
  CHECK(mu(bare.module) == 1);

  auto cyc = detail::build_object(R, "cyclic: x", "C", opts);
  CHECK(cyc.kind == detail::ScenarioObject<RationalField>::Cyclic);
  CHECK(mu(cyc.module) == 1);

  auto idm = detail::build_object(R, "ideal: x*y, x*z", "I", opts);
  CHECK(idm.kind == detail::ScenarioObject<RationalField>::IdealM);
  CHECK(mu(idm.module) == 2);

  auto fr = detail::build_object(R, "free: 2", "F", opts);
  CHECK(fr.kind == detail::ScenarioObject<RationalField>::Free);
  CHECK(mu(fr.module) == 2);
  CHECK(module_dimension(fr.module, opts) == 3);

  auto ck = detail::build_object(R, "coker(0, 0): (x, y) | (z, 0)", "K", opts);
  CHECK(ck.kind == detail::ScenarioObject<RationalField>::Coker);
  CHECK(mu(ck.module) == 2);

  CHECK_THROWS_AS(detail::build_object(R, "free: -1", "B", opts), ParseError);
  CHECK_THROWS_AS(detail::build_object(R, "blob: x", "B", opts), ParseError);
  CHECK_THROWS_AS(detail::build_object(R, "coker: (x)", "B", opts),
                  ParseError);
  CHECK_THROWS_AS(detail::build_object(R, "coker(0, 0): (x)", "B", opts),
                  ParseError);
  CHECK_THROWS_AS(detail::build_object(R, "coker(0, 0): x, y", "B", opts),
                  ParseError);
}

TEST_CASE("a passing document reports every task green") {
  ScenarioReport rep = run_scenario_doc(parse(
      "name = \"green\"\n"
      "ring = \"QQ[x,y,z]\"\n"
      "[objects]\n"
      "M = \"x*y, x*z\"\n"
      "I = \"ideal: x*y, x*z\"\n"
      "[[task]]\n"
      "op = \"mu\"\n"
      "module = \"M\"\n"
      "expect = 1\n"
      "[[task]]\n"
      "op = \"ext\"\n"
      "module = \"M\"\n"
      "i = 2\n"
      "expect_zero = false\n"
      "expect_mu = 1\n"
      "expect_ann = \"y, z\"\n"
      "expect_dim = 1\n"
      "[[task]]\n"
      "op = \"iterated_ext\"\n"
      "module = \"M\"\n"
      "path = \"2, 2\"\n"
      "expect_hilbert = \"t/(1-t)\"\n"
      "[[task]]\n"
      "op = \"min_primes\"\n"
      "ideal = \"I\"\n"
      "expect_primes = \"(x); (y, z)\"\n"
      "[[task]]\n"
      "op = \"radical_member\"\n"
      "ideal = \"I\"\n"
      "members = \"x*y, x*z\"\n"
      "expect = true\n"
      "[[task]]\n"
      "op = \"shift\"\n"
      "ideal = \"I\"\n"
      "i = 1\n"
      "expect_match = true\n"
      "[[task]]\n"
      "op = \"support_check\"\n"
      "module = \"M\"\n"
      "expect_equal = true\n"
      "[[task]]\n"
      "op = \"gamma\"\n"
      "module = \"M\"\n"
      "upto = 3\n"
      "expect_rad_ann = true\n"));
  CHECK(rep.all_pass);
  CHECK(rep.name == "green");
  REQUIRE(rep.tasks.size() == 8);
  for (const auto& t : rep.tasks) {
    CAPTURE(t.index);
    CAPTURE(t.op);
    CHECK(t.pass);
    CHECK(t.checked);
    CHECK(t.mismatches.empty());
  }
  // Task outcomes carry their one-based index and the op they ran.
  CHECK(rep.tasks[0].index == 1);
  CHECK(rep.tasks[0].op == "mu");
  CHECK(rep.tasks[0].target == "M");
  CHECK(rep.tasks[5].op == "shift");
}

TEST_CASE("a failing expectation flips the task and the report") {
  ScenarioReport rep = run_scenario_doc(parse(
      "name = \"red\"\n"
      "ring = \"QQ[x,y,z]\"\n"
      "[[task]]\n"
      "op = \"mu\"\n"
      "module = \"cyclic: x\"\n"
      "expect = 5\n"
      "[[task]]\n"
      "op = \"dim\"\n"
      "module = \"cyclic: x\"\n"
      "expect = 2\n"));
  CHECK_FALSE(rep.all_pass);
  REQUIRE(rep.tasks.size() == 2);
  CHECK_FALSE(rep.tasks[0].pass);
  CHECK(rep.tasks[0].checked);
  REQUIRE(rep.tasks[0].mismatches.size() == 1);
  CHECK(rep.tasks[0].mismatches[0] == "expect: computed 1, expected 5");
  CHECK(rep.tasks[1].pass);  // dim R/(x) really is 2
  CHECK(rep.tasks[1].mismatches.empty());
}

TEST_CASE("tasks without expectations run unchecked but still pass") {
  ScenarioReport rep = run_scenario_doc(parse(
      "ring = \"QQ[x,y,z]\"\n"
      "[[task]]\n"
      "op = \"invariants\"\n"
      "module = \"x, y\"\n"));
  CHECK(rep.all_pass);
  REQUIRE(rep.tasks.size() == 1);
  CHECK(rep.tasks[0].pass);
  CHECK_FALSE(rep.tasks[0].checked);
  CHECK(rep.tasks[0].op == "invariants");
  CHECK(rep.tasks[0].target == "x, y");
  // Computed values land in the data payload even with nothing to check.
  CHECK(rep.tasks[0].data.count("betti") == 1);
}

TEST_CASE("inline module sources work wherever object names do") {
  ScenarioReport rep = run_scenario_doc(parse(
      "ring = \"QQ[x,y,z]\"\n"
      "[[task]]\n"
      "op = \"depth\"\n"
      "module = \"0\"\n"
      "expect = \"inf\"\n"
      "[[task]]\n"
      "op = \"grade\"\n"
      "module = \"free: 1\"\n"
      "expect = 0\n"
      "[[task]]\n"
      "op = \"hilbert\"\n"
      "module = \"x, y, z\"\n"
      "expect = \"1\"\n"));
  CHECK(rep.all_pass);
  REQUIRE(rep.tasks.size() == 3);
  for (const auto& t : rep.tasks) CHECK(t.checked);
}

TEST_CASE("a truncated resolution window raises a warning, not a failure") {
  ScenarioReport rep = run_scenario_doc(parse(
      "ring = \"QQ[x,y,z]/(x^2, x*y, x*z)\"\n"
      "[[task]]\n"
      "op = \"resolve\"\n"
      "module = \"cyclic: x\"\n"
      "window = 3\n"
      "expect_complete = false\n"));
  CHECK(rep.all_pass);
  REQUIRE(rep.tasks.size() == 1);
  CHECK(rep.tasks[0].pass);
  CHECK_FALSE(rep.tasks[0].warnings.empty());
}

TEST_CASE("a document-level degree cap aborts heavy tasks loudly") {
  ScenarioDoc doc = parse(
      "ring = \"QQ[x,y]\"\n"
      "degree_cap = 5\n"
      "[[task]]\n"
      "op = \"hilbert\"\n"
      "module = \"x^12 - y^12, x*y\"\n"
      "expect = \"1\"\n");
  CHECK_THROWS_AS(run_scenario_doc(doc), DegreeCapError);
}

TEST_CASE("the JSON document form mirrors the text form") {
  const std::string body =
      "{\n"
      "  \"name\": \"paired\",\n"
      "  \"ring\": \"QQ[x,y,z]\",\n"
      "  \"objects\": {\"M\": \"x*y, x*z\"},\n"
      "  \"tasks\": [\n"
      "    {\"op\": \"mu\", \"module\": \"M\", \"expect\": 1},\n"
      "    {\"op\": \"ann\", \"module\": \"M\", \"expect_ideal\": "
      "\"x*y, x*z\"}\n"
      "  ]\n"
      "}\n";
  ScenarioDoc doc = parse_scenario_text(body);
  CHECK(doc.name == "paired");
  REQUIRE(doc.tasks.size() == 2);
  ScenarioReport rep = run_scenario_doc(doc);
  CHECK(rep.all_pass);

  // The same document written in the line-based form agrees task for task.
  ScenarioReport rep2 = run_scenario_doc(parse(
      "name = \"paired\"\n"
      "ring = \"QQ[x,y,z]\"\n"
      "[objects]\n"
      "M = \"x*y, x*z\"\n"
      "[[task]]\n"
      "op = \"mu\"\n"
      "module = \"M\"\n"
      "expect = 1\n"
      "[[task]]\n"
      "op = \"ann\"\n"
      "module = \"M\"\n"
      "expect_ideal = \"x*y, x*z\"\n"));
  CHECK(rep2.all_pass);
  REQUIRE(rep.tasks.size() == rep2.tasks.size());
  for (size_t k = 0; k < rep.tasks.size(); ++k) {
    CHECK(rep.tasks[k].op == rep2.tasks[k].op);
    CHECK(rep.tasks[k].pass == rep2.tasks[k].pass);
    CHECK(rep.tasks[k].checked == rep2.tasks[k].checked);
  }
}

TEST_CASE("every shipped scenario file runs green") {
  const std::vector<std::string> files = {
      "cyclic_xy_xz.toml",     "empty.toml",         "hypersurface_f5.toml",
      "json_smoke.json",       "perfect_codim2.toml", "quotient_socle.toml",
  };
  for (const auto& f : files) {
    CAPTURE(f);
    ScenarioReport rep =
        run_scenario_file(std::string(EXTSCOPE_SCENARIO_DIR) + "/" + f);
    CHECK(rep.all_pass);
    for (const auto& t : rep.tasks) {
      CAPTURE(t.index);
      CAPTURE(t.op);
      CHECK(t.pass);
      for (const auto& m : t.mismatches) {
        CAPTURE(m);
        CHECK(false);
      }
    }
  }
}
