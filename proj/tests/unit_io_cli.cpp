#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "mforge/iolib.hpp"
#include "support/capture.hpp"

using namespace mforge;
using testsupport::run;

namespace {

// a tiny well-formed document used as the base for the error battery
const char* kMinimal =
    "format 1\n"
    "field Q\n"
    "grading trivial\n"
    "bcommutative true\n"
    "\n"
    "[basis]\n"
    "a 0\n"
    "b 0\n"
    "\n"
    "[products]\n"
    "a b = b\n";

size_t parse_error_line(const std::string& text) {
  try {
    parse_algebra(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string parse_error_what(const std::string& text) {
  try {
    parse_algebra(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

std::string temp_doc(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/mforge-test-" + name + ".alg";
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("a minimal B-commutative document parses with mirror completion") {
  const StructureAlgebra alg = parse_algebra(kMinimal);
  CHECK(alg.dim() == 2);
  CHECK(alg.names == std::vector<std::string>{"a", "b"});
  CHECK(alg.bcommutative);
  CHECK_FALSE(alg.gram.has_value());
  CHECK(alg.table[0][1] == basis_elem(1));
  // trivial grading is anticommutative: the mirror gets the minus sign
  CHECK(alg.table[1][0] == scale(basis_elem(1), Rat(-1)));
  CHECK(alg.table[0][0].empty());
}

TEST_CASE("mirror completion uses the graded sign") {
  const std::string doc =
      "format 1\nfield Q\ngrading Z2\nbcommutative true\n"
      "[basis]\ne 0\nx 1\n"
      "[products]\ne x = x\nx x = e\n";
  const StructureAlgebra alg = parse_algebra(doc);
  // even-odd anticommutes, so "x e" is completed to -x
  CHECK(alg.table[1][0] == scale(basis_elem(1), Rat(-1)));
  // odd-odd commutes under the sign convention; x x needs no mirror
  CHECK(alg.table[1][1] == basis_elem(0));
}

TEST_CASE("whitespace, comments, and CR are tolerated") {
  const std::string doc =
      "# leading comment\n"
      "format 1\r\n"
      "  field Q\n"
      "grading trivial\t\n"
      "bcommutative true\n"
      "\n"
      "   [basis]\n"
      " a 0 \n"
      "\tb 0\n"
      "# interlude\n"
      "[products]\n"
      "a  b =  b\n";
  CHECK(parse_algebra(doc) == parse_algebra(kMinimal));
}

TEST_CASE("serialization round-trips every builtin exactly") {
  for (const auto& name : builtin_names()) {
    const StructureAlgebra alg = builtin(name);
    INFO(name);
    CHECK(parse_algebra(serialize_algebra(alg)) == alg);
  }
}

TEST_CASE("serialization is canonical and byte-stable") {
  const StructureAlgebra m7 = builtin("m7");
  const std::string text = serialize_algebra(m7);
  CHECK(text == serialize_algebra(parse_algebra(text)));  // idempotent
  CHECK(text.rfind("format 1\nfield Q\ngrading trivial\nbcommutative true\n", 0) == 0);
  CHECK(text.find("\r") == std::string::npos);
  CHECK(text.find("\ne2 e5 = e1\n") != std::string::npos);  // upper triangle only
  CHECK(text.find("e5 e2") == std::string::npos);
  CHECK(text.find("\n[form]\n") != std::string::npos);
  CHECK(text.find("\n[toral]\n") != std::string::npos);
  CHECK(serialize_algebra(builtin("osp12")).find("grading Z2\n") != std::string::npos);
}

TEST_CASE("header errors carry the offending line number") {
  CHECK(parse_error_what("format 2\n") == "line 1: unsupported format '2'");
  CHECK(parse_error_what("format 1\nfield R\n") == "line 2: unsupported field 'R'");
  CHECK(parse_error_what("format 1\nfield Q\nbogus 3\n") ==
        "line 3: unknown header key 'bogus'");
  CHECK(parse_error_what("format 1\nformat 1\n") ==
        "line 2: duplicate header key 'format'");
  CHECK(parse_error_what("format 1\nfield Q\ngrading Z5\n") ==
        "line 3: unknown grading 'Z5' (expected trivial, Z2, or Zp:<p>)");
  CHECK(parse_error_what("format 1\nfield Q\ngrading Zp:4\n") ==
        "line 3: grading modulus must be prime, got 4");
  CHECK(parse_error_what("format 1\nfield Q\ngrading trivial\nbcommutative yes\n") ==
        "line 4: bcommutative must be true or false");
  // a missing key is reported at the end of the document
  const std::string no_grading =
      "format 1\nfield Q\nbcommutative true\n[basis]\na 0\n[products]\na a = 0\n";
  CHECK(parse_error_what(no_grading) == "line 7: missing header key 'grading'");
  CHECK(parse_error_line(no_grading) == 7);
}

TEST_CASE("section errors") {
  const std::string head = "format 1\nfield Q\ngrading trivial\nbcommutative true\n";
  CHECK(parse_error_what(head + "[basis\n") == "line 5: malformed section header");
  CHECK(parse_error_what(head + "[stuff]\n") == "line 5: unknown section [stuff]");
  CHECK(parse_error_what(head + "[basis]\na 0\n[basis]\n") ==
        "line 7: duplicate section [basis]");
  CHECK(parse_error_what(head + "[products]\n") == "line 5: missing [basis] section");
  CHECK(parse_error_what(head + "[basis]\na 0\n") ==
        "line 6: missing [products] section");
  CHECK(parse_error_what(head + "[basis]\n[products]\n") == "line 6: empty basis");
}

TEST_CASE("basis errors") {
  // the [products] section is present so that the basis error wins precedence
  const std::string head = "format 1\nfield Q\ngrading trivial\nbcommutative true\n[basis]\n";
  CHECK(parse_error_what(head + "a\n[products]\n") ==
        "line 6: basis line must be '<name> <degree>'");
  CHECK(parse_error_what(head + "a zero\n[products]\n") == "line 6: bad degree 'zero'");
  CHECK(parse_error_what(head + "a 0\na 0\n[products]\na a = 0\n") ==
        "line 7: duplicate basis name 'a'");
  CHECK(parse_error_line(head + "a 0\na 0\n[products]\na a = 0\n") == 7);
}

TEST_CASE("product errors") {
  auto doc = [](const std::string& line) {
    return std::string(kMinimal) + line + "\n";
  };
  CHECK(parse_error_what(doc("a b b")) == "line 12: product line needs '='");
  CHECK(parse_error_what(doc("a = b")) ==
        "line 12: product line must be '<name> <name> = <sum>'");
  CHECK(parse_error_what(doc("q b = a")) == "line 12: unknown basis name 'q'");
  CHECK(parse_error_what(doc("a b = b")) == "line 12: duplicate product a b");
  CHECK(parse_error_what(doc("b a = -b")) ==
        "line 12: both orientations of b/a given; a B-commutative document lists one");
  CHECK(parse_error_what(doc("a a = 2*")) == "line 12: unknown basis name ''");
  CHECK(parse_error_what(doc("a a = b +")) == "line 12: trailing sign without a term");
  CHECK(parse_error_what(doc("a a = b b")) == "line 12: expected + or - before 'b'");
  CHECK(parse_error_what(doc("a a = -")) == "line 12: dangling sign");
  CHECK(parse_error_what(doc("a a =")) == "line 12: empty product value");
  CHECK(parse_error_what(doc("a a = 1/0*b")) == "line 12: zero denominator in '1/0'");
}

TEST_CASE("form and toral section errors") {
  const std::string base(kMinimal);
  CHECK(parse_error_what(base + "[form]\n1 0\n") ==
        "line 13: [form] must have exactly 2 rows");
  CHECK(parse_error_what(base + "[form]\n1 0\n0 1 2\n") ==
        "line 14: form row must have 2 entries");
  CHECK(parse_error_what(base + "[form]\n1 0\n0 x\n") == "line 14: bad rational 'x'");
  CHECK(parse_error_what(base + "[toral]\n1\n") ==
        "line 13: toral row must have 2 entries");
}

TEST_CASE("semantic violations surface as validation errors, not parse errors") {
  // product of degree 0+1 elements landing in degree 0 breaks the grading
  const std::string doc =
      "format 1\nfield Q\ngrading Z2\nbcommutative true\n"
      "[basis]\ne 0\nx 1\n"
      "[products]\ne x = e\n";
  CHECK_THROWS_AS(parse_algebra(doc), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_algebra(doc), doctest::Contains("degree"),
                       std::invalid_argument);
  try {
    parse_algebra(doc);
  } catch (const ParseError&) {
    FAIL("grading violations must not be reported as parse errors");
  } catch (const std::invalid_argument&) {
  }
}

TEST_CASE("builtin catalog") {
  CHECK(builtin_names() ==
        std::vector<std::string>{"m7-paper", "m7", "sl2", "osp12", "abelian2"});
  CHECK_THROWS_WITH_AS(builtin("nope"), "unknown builtin 'nope'",
                       std::invalid_argument);
}

TEST_CASE("cli: help and argument errors exit with the documented codes") {
  const auto help = run({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("exact structure-constant checker") != std::string::npos);

  const auto none = run({});
  CHECK(none.exit_code == 3);
  CHECK(none.err == "A subcommand is required\n");

  const auto flag = run({"identities", "builtin:m7", "--identity", "jacobi", "--bogus"});
  CHECK(flag.exit_code == 3);
  CHECK(flag.err.find("--bogus") != std::string::npos);

  const auto mode = run({"identities", "builtin:m7", "--identity", "jacobi", "--mode", "wild"});
  CHECK(mode.exit_code == 3);
  CHECK(mode.err.find("not in {exhaustive,sampled}") != std::string::npos);

  const auto ident = run({"identities", "builtin:m7", "--identity", "frobnicate"});
  CHECK(ident.exit_code == 3);
  CHECK(ident.err == "unknown identity 'frobnicate'\n");

  const auto missing = run({"form", "/tmp/mforge-no-such-file.alg"});
  CHECK(missing.exit_code == 3);
  CHECK(missing.err == "cannot open '/tmp/mforge-no-such-file.alg'\n");

  const auto bad = run({"form", "builtin:nope"});
  CHECK(bad.exit_code == 3);
  CHECK(bad.err == "unknown builtin 'nope'\n");
}

TEST_CASE("cli: affinize argument validation") {
  auto expect3 = [](std::vector<std::string> args, const std::string& needle) {
    const auto r = run(std::move(args));
    CHECK(r.exit_code == 3);
    INFO(needle, " in: ", r.err);
    CHECK(r.err.find(needle) != std::string::npos);
  };
  expect3({"affinize", "builtin:m7", "--flavor", "wavy", "--check", "sagle"},
          "not in {plain,tilde,hat}");
  expect3({"affinize", "builtin:m7", "--flavor", "hat", "--check", "bogus"},
          "--check expects an identity name or 'eaa'; got 'bogus'");
  expect3({"affinize", "builtin:m7", "--flavor", "hat", "--rank", "2", "--cocycle", "2",
           "--check", "sagle"},
          "--cocycle needs 4 entries (row-major 2x2 matrix), got 1");
  expect3({"affinize", "builtin:m7", "--flavor", "hat", "--rank", "0", "--check", "sagle"},
          "--rank must be at least 1");
  expect3({"affinize", "builtin:m7", "--flavor", "hat", "--box", "-1", "--check", "sagle"},
          "--box must be nonnegative");
  expect3({"affinize", "builtin:m7", "--flavor", "hat", "--cocycle", "0", "--check", "sagle"},
          "cocycle entries must be nonzero");
}

TEST_CASE("cli: file subjects load, and parse failures name the file and line") {
  const std::string good = temp_doc("m7", serialize_algebra(builtin("m7")));
  const auto r = run({"identities", good, "--identity", "sagle", "--format", "json"});
  CHECK(r.exit_code == 0);
  const auto report = r.json();
  CHECK(report["subject"] == good);
  CHECK(report["checks"][0]["status"] == "pass");
  CHECK(report["checks"][0]["count"] == 2401);

  const std::string broken = temp_doc("broken", "format 2\n");
  const auto b = run({"form", broken});
  CHECK(b.exit_code == 3);
  CHECK(b.err == broken + ": line 1: unsupported format '2'\n");
}

TEST_CASE("cli: the exhaustive identities report has the frozen JSON shape") {
  const auto r = run({"identities", "builtin:m7", "--identity", "jacobi", "--format", "json"});
  CHECK(r.exit_code == 1);
  // key order matters for byte-stable output, so parse order-preserving
  const auto report = nlohmann::ordered_json::parse(r.out);
  const std::vector<std::string> keys = {"report_version", "tool_version", "command",
                                         "subject",        "overall",      "exit_code",
                                         "checks"};
  size_t k = 0;
  for (auto it = report.begin(); it != report.end(); ++it, ++k) {
    REQUIRE(k < keys.size());
    CHECK(it.key() == keys[k]);  // no seed key without sampling, never a timing key
  }
  CHECK(k == keys.size());
  CHECK(report["report_version"] == "1");
  CHECK(report["tool_version"] == "0.1.0");
  CHECK(report["command"] == "identities --identity jacobi --mode exhaustive");
  CHECK(report["subject"] == "builtin:m7");
  CHECK(report["overall"] == "fail");
  CHECK(report["exit_code"] == 1);
  const auto& check = report["checks"][0];
  CHECK(check["name"] == "jacobi");
  CHECK(check["status"] == "fail");
  CHECK(check["count"] == 343);
  CHECK(check["witness"]["inputs"] == nlohmann::json::array({"e1", "e2", "e3"}));
  CHECK(check["witness"]["value"] == "12*e7");
  CHECK(check["details"] == "exhaustive over basis tuples");
  CHECK(r.out.find("elapsed") == std::string::npos);
}

TEST_CASE("cli: sampled runs echo their seed in command and field") {
  const auto r = run({"identities", "builtin:m7", "--identity", "malcev_original",
                      "--mode", "sampled", "--seed", "7", "--count", "50", "--format",
                      "json"});
  CHECK(r.exit_code == 0);
  const auto report = r.json();
  CHECK(report["command"] ==
        "identities --identity malcev_original --mode sampled --seed 7 --count 50");
  CHECK(report["seed"] == 7);
  CHECK(report["checks"][0]["count"] == 50);
}

TEST_CASE("cli: JSON output is byte-identical across thread counts") {
  for (const std::vector<std::string> base :
       {std::vector<std::string>{"decompose", "builtin:m7", "--format", "json"},
        std::vector<std::string>{"obstruction", "builtin:m7-paper", "--format", "json"},
        std::vector<std::string>{"form", "builtin:osp12", "--format", "json"}}) {
    auto with_threads = [&](const char* n) {
      auto args = base;
      args.push_back("--threads");
      args.push_back(n);
      return run(std::move(args));
    };
    const auto one = with_threads("1");
    const auto eight = with_threads("8");
    CHECK(one.exit_code == eight.exit_code);
    CHECK(one.out == eight.out);
  }
}

TEST_CASE("cli: eaa without declared toral rows fails the toral_data gate") {
  StructureAlgebra alg = builtin("m7");
  alg.toral_rows.clear();
  const std::string path = temp_doc("no-toral", serialize_algebra(alg));
  const auto r = run({"eaa", path, "--format", "json"});
  CHECK(r.exit_code == 1);
  const auto report = r.json();
  REQUIRE(report["checks"].size() == 1);
  CHECK(report["checks"][0]["name"] == "toral_data");
  CHECK(report["checks"][0]["status"] == "fail");
  CHECK(report["checks"][0]["details"] ==
        "the subject declares no toral rows; nothing to decompose");
}

TEST_CASE("cli: human output format") {
  const auto fail = run({"form", "builtin:m7-paper"});
  CHECK(fail.exit_code == 1);
  CHECK(fail.out.find("[FAIL] form_invariant") != std::string::npos);
  CHECK(fail.out.find("overall: fail (exit 1)") != std::string::npos);
  CHECK(fail.out.find("elapsed:") != std::string::npos);

  const auto pass = run({"form", "builtin:m7"});
  CHECK(pass.exit_code == 0);
  CHECK(pass.out.find("[PASS]") != std::string::npos);
  CHECK(pass.out.find("overall: pass (exit 0)") != std::string::npos);
}

TEST_CASE("cli: eaa command echo includes the budget") {
  const auto r = run({"eaa", "builtin:m7", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.json()["command"] == "eaa --budget 500");
}

TEST_CASE("cli: affinize echoes flavor, rank, cocycle, box, and check") {
  const auto r = run({"affinize", "builtin:m7", "--flavor", "tilde", "--box", "0",
                      "--check", "sagle", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.json()["command"] ==
        "affinize --flavor tilde --rank 1 --cocycle 1 --box 0 --check sagle");

  const auto q = run({"affinize", "builtin:m7", "--flavor", "tilde", "--rank", "2",
                      "--cocycle", "1,2,2,1/3", "--box", "0", "--check", "sagle",
                      "--format", "json"});
  CHECK(q.exit_code == 0);
  CHECK(q.json()["command"] ==
        "affinize --flavor tilde --rank 2 --cocycle 1,2,2,1/3 --box 0 --check sagle");
}
