#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oax/runner.hpp>

#include "fixtures.hpp"

using namespace oax;

namespace {
std::string sol_path(const std::string& name) { return std::string(OAX_SOLUTIONS_DIR) + "/" + name + ".sol"; }
}  // namespace

TEST_CASE("solution file parsing") {
  SUBCASE("oae round trip") {
    std::string text =
        "# a comment\n"
        "dim 2\n"
        "kind oae\n"
        "K2 x1*x2   # trailing comment\n"
        "K1 x1^2/2\n";
    ParsedSolution s = parse_solution_text(text, "t");
    CHECK(s.kind == ParsedSolution::Kind::kOae);
    CHECK(s.dim == 2);
    CHECK(s.kcomps[0] == fixtures::algebra_n2().comps[0]);
    CHECK(s.kcomps[1] == fixtures::algebra_n2().comps[1]);
    ParsedSolution again = parse_solution_text(serialize_solution(s), "t");
    CHECK(again.kcomps == s.kcomps);
  }

  SUBCASE("wdvv with negative metric entries") {
    std::string text = "dim 2\nkind wdvv\neta 0 -1 -1 0\nF x1^2*x2/2\n";
    ParsedSolution s = parse_solution_text(text, "t");
    CHECK(s.eta->at(0, 1) == Rational(-1));
    ParsedSolution again = parse_solution_text(serialize_solution(s), "t");
    CHECK(again.eta->at(1, 0) == Rational(-1));
    CHECK(*again.prepotential == *s.prepotential);
  }

  SUBCASE("errors carry location") {
    CHECK_THROWS_AS(parse_solution_text("dim 2\nkind oae\nK1 x1\nK2 x9\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_solution_text("kind oae\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_solution_text("dim 2\nkind oae\nK1 x1\n", "t"), ParseError);       // missing K2
    CHECK_THROWS_AS(parse_solution_text("dim 2\nkind oae\nK1 x1\nK1 x2\nK2 0\n", "t"), ParseError);  // dup
    CHECK_THROWS_AS(parse_solution_text("dim 2\nkind wdvv\nF x1\n", "t"), ParseError);       // missing eta
    CHECK_THROWS_AS(parse_solution_text("dim 2\nkind wdvv\neta 1 0 0\nF x1\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_solution_text("dim 2\nkind odd\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_solution_text("dim 2\nkind oae\nQ1 x1\n", "t"), ParseError);
  }
}

TEST_CASE("registry and bundles") {
  CHECK(bundled_names().size() == 6);
  CHECK(bundled_names(false).size() == 4);
  int trusted = 0, rejected = 0;
  for (const auto& e : bundled_entries()) {
    SolutionBundle b = make_bundle(parse_solution_text(e.text, e.name));
    if (e.counterexample) {
      CHECK(!b.trusted);
      CHECK(!b.rejection.empty());
      ++rejected;
    } else {
      CHECK(b.trusted);
      ++trusted;
    }
  }
  CHECK(trusted == 4);
  CHECK(rejected == 2);

  SUBCASE("load_solution throws on counterexamples") {
    CHECK_THROWS_AS(load_solution(sol_path("nonassoc-n2")), NotASolutionError);
    SolutionBundle b = load_solution(sol_path("a3-wdvv"));
    CHECK(b.trusted);
    CHECK(b.is_wdvv());
  }

  SUBCASE("disk copies match the registry") {
    for (const auto& e : bundled_entries()) {
      std::ifstream in(sol_path(e.name));
      REQUIRE(in.good());
      std::stringstream buf;
      buf << in.rdbuf();
      CHECK(buf.str() == e.text);
    }
  }
}

TEST_CASE("verify command") {
  RunOptions opts;
  opts.order = 2;
  for (const auto& name : bundled_names(false)) {
    Report r = run_verify(name, opts);
    CHECK(r.all_pass());
    CHECK(!r.records.empty());
  }
  Report bad = run_verify("nonassoc-n2", opts);
  CHECK(!bad.all_pass());
  bool has_witness = false;
  for (const auto& rec : bad.records)
    if (rec.verdict == "fail" && !rec.witness.empty()) has_witness = true;
  CHECK(has_witness);
  Report badw = run_verify("bad-wdvv-n3", opts);
  CHECK(!badw.all_pass());
}

TEST_CASE("hierarchy command on a path input") {
  RunOptions opts;
  opts.order = 3;
  opts.seed_sets = 2;
  Report r = run_hierarchy(sol_path("algebra-n2"), opts);
  CHECK(r.all_pass());
  bool saw_spectral = false;
  for (const auto& rec : r.records)
    if (rec.id.rfind("spectral-vector", 0) == 0) saw_spectral = true;
  CHECK(saw_spectral);

  Report rejected = run_hierarchy("nonassoc-n2", opts);
  CHECK(!rejected.all_pass());
  CHECK(rejected.records.size() == 1);
  CHECK(rejected.records[0].id == "input-trusted");
}

TEST_CASE("seeds file is honored") {
  RunOptions opts;
  opts.order = 2;
  std::string path = "/tmp/oax_seeds_test.json";
  {
    std::ofstream out(path);
    out << R"({"sets":[{"h":[["1","1"],["1","2"],["1/2","1"]],"b":["0","1","2"],"d":[["1","0"],["0","1"],["1","1"]]}]})";
  }
  opts.seeds_file = path;
  Report r = run_hierarchy("algebra-n2", opts);
  CHECK(r.all_pass());
  int spectral_records = 0;
  for (const auto& rec : r.records)
    if (rec.id.rfind("spectral-", 0) == 0) ++spectral_records;
  CHECK(spectral_records == 2);  // one seed set, vector + scalar
}

TEST_CASE("backlund command records the condition verdicts") {
  RunOptions opts;
  Report ok = run_backlund("algebra-n2", opts);
  CHECK(ok.all_pass());
  Report shear = run_backlund(sol_path("shear-n2"), opts);
  CHECK(!shear.all_pass());
  bool cond_fail = false;
  for (const auto& rec : shear.records)
    if (rec.id == "backlund-condition" && rec.verdict == "fail" && !rec.witness.empty()) cond_fail = true;
  CHECK(cond_fail);
  Report cubic = run_backlund("commuting-cubic", opts);
  CHECK(cubic.all_pass());
}

TEST_CASE("reduce emits a loadable bundle") {
  RunOptions opts;
  std::string emitted;
  Report r = run_reduce("a3-wdvv", opts, &emitted);
  CHECK(r.all_pass());
  SolutionBundle b = make_bundle(parse_solution_text(emitted, "reduced"));
  CHECK(b.trusted);
  CHECK(b.K.comps == gradient_reduce(fixtures::a3_wdvv()).comps);
  Report not_wdvv = run_reduce("algebra-n2", opts, &emitted);
  CHECK(!not_wdvv.all_pass());
}

TEST_CASE("reports are canonical and deterministic") {
  RunOptions opts;
  opts.order = 2;
  opts.seed = 42;
  Report a = run_symmetries("algebra-n2", opts);
  Report b = run_symmetries("algebra-n2", opts);
  CHECK(a.to_text() == b.to_text());
  opts.seed = 43;
  Report c = run_symmetries("algebra-n2", opts);
  CHECK(a.to_text() != c.to_text());  // seed lands in the report header

  // records sorted by id, keys sorted by the serializer
  for (std::size_t i = 1; i < a.records.size(); ++i) CHECK(a.records[i - 1].id <= a.records[i].id);
  // every record carries an anchor
  for (const auto& rec : a.records) CHECK(!rec.anchor.empty());
  // timings only on request
  CHECK(a.to_text(false).find("seconds") == std::string::npos);
}

TEST_CASE("digest is stable") {
  CHECK(digest_hex("") == "cbf29ce484222325");
  CHECK(digest_hex("dim 2") == digest_hex("dim 2"));
  CHECK(digest_hex("a") != digest_hex("b"));
}
