#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "taurec/cli.hpp"

using namespace taurec;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / ("taurec_test_" + name)).string(); }

void write(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

const IndCatalog& b3_catalog() {
  static const auto k = knit_ar_quiver(fixtures::b3());
  return *k.catalog;
}

}  // namespace

TEST_CASE("definition parser") {
  SECTION("built-in example") {
    const auto& d = fixtures::ex51();
    CHECK(d.algebra_names == std::vector<std::string>{"Lprime", "Ldprime"});
    CHECK(d.algebra("Lprime").algebra.dim() == 3);
    CHECK(d.algebra("Ldprime").algebra.dim() == 5);
    CHECK(d.recollements.count("ex51") == 1);
  }
  SECTION("empty input gives an empty document") {
    auto d = parse_definitions("");
    CHECK(d.algebras.empty());
    CHECK(d.morphisms.empty());
    CHECK(d.recollements.empty());
    CHECK(parse_definitions("# only a comment\n\n").algebras.empty());
  }
  SECTION("relation with mismatched endpoints") {
    const std::string text = "algebra \"A\" {\n  field rational;\n  vertices 1 2 3;\n  arrow a 1 -> 2;\n  arrow b 2 -> 3;\n  relation a*b;\n}\n";
    try {
      parse_definitions(text);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line == 6);
      CHECK(e.column > 0);
    }
  }
  SECTION("errors carry positions") {
    try {
      parse_definitions("algebra \"A\" {\n  field rational;\n  vertices 1;\n  arrow a 1 -> 7;\n}\n");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line == 4);
      CHECK(std::string(e.what()).rfind("4:", 0) == 0);
    }
    CHECK_THROWS_AS(parse_definitions("algebra \"A\" { field rational; vertices 1 }"), ParseError);
    CHECK_THROWS_AS(parse_definitions("algebra \"A\" { field fp 4; vertices 1; }"), Error);
    CHECK_THROWS_AS(parse_definitions("algebra \"A\" { field rational; vertices 1; } recollement \"R\" { left \"A\"; right \"B\"; bimodule zero; }"), ParseError);
    CHECK_THROWS_AS(parse_definitions("algebra \"A\" { field rational; vertices 1; } @"), ParseError);
  }
}

TEST_CASE("module specifications") {
  const IndCatalog& c = b3_catalog();
  auto id = [&](long x) { return static_cast<std::size_t>(x); };
  const std::size_t p4 = id(c.projective(1)), s3 = id(c.simple(0)), s4 = id(c.simple(1));
  CHECK(parse_module_spec(c, "P(4)+S(3)") == IdMultiset{{std::min(p4, s3), 1}, {std::max(p4, s3), 1}});
  CHECK(parse_module_spec(c, "X1+X3") == IdMultiset{{1, 1}, {3, 1}});
  CHECK(parse_module_spec(c, " 2*S(4) + S(4) ") == IdMultiset{{s4, 3}});
  CHECK(parse_module_spec(c, "D[011]") == IdMultiset{{p4, 1}});
  CHECK(parse_module_spec(c, "D[0,1,1]+D[100]") == parse_module_spec(c, "P(4)+S(3)"));
  CHECK(parse_module_spec(c, "I(5)") == parse_module_spec(c, "P(4)"));
  CHECK(parse_module_spec(c, "0").empty());
  CHECK_THROWS_AS(parse_module_spec(c, "X9"), ParseError);
  CHECK_THROWS_AS(parse_module_spec(c, "P(7)"), ParseError);
  CHECK_THROWS_AS(parse_module_spec(c, "D[111]"), ParseError);
  CHECK_THROWS_AS(parse_module_spec(c, "S(3)+"), ParseError);
  CHECK_THROWS_AS(parse_module_spec(c, "x*S(3)"), ParseError);
  CHECK_THROWS_AS(parse_module_spec(c, "Q(3)"), ParseError);
}

TEST_CASE("JSON payloads and the catalog loader") {
  const IndCatalog& c = b3_catalog();
  SECTION("module payload carries the dimension vector") {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Json j = module_json(c.module(i), true);
      CHECK(j.at("dim_vector").get<std::vector<std::size_t>>() == c.module(i).dim_vector());
      CHECK(j.at("dim").get<std::size_t>() == c.module(i).dim());
      Module back = module_from_json(j, c.algebra());
      CHECK(back.dim_vector() == c.module(i).dim_vector());
      CHECK(is_isomorphic(back, c.module(i)));
    }
  }
  SECTION("round trip") {
    Json j = catalog_json(c);
    CHECK(j.at("schema") == kSchema);
    Json reparsed = Json::parse(j.dump());
    IndCatalog back = load_catalog(reparsed, c.algebra());
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(back.module(i).dim_vector() == c.module(i).dim_vector());
      CHECK(back.tau(i) == c.tau(i));
    }
    CHECK(catalog_json(back).dump() == j.dump());
  }
  SECTION("corrupted catalogs are rejected") {
    Json j = catalog_json(c);
    Json missing = j;
    missing["modules"].erase(missing["modules"].size() - 1);
    CHECK_THROWS_AS(load_catalog(missing, c.algebra()), VerificationMismatch);
    Json wrong_tau = j;
    wrong_tau["modules"][3]["tau"] = 4;
    CHECK_THROWS_AS(load_catalog(wrong_tau, c.algebra()), VerificationMismatch);
    CHECK_THROWS_AS(load_catalog(j, fixtures::a2()), VerificationMismatch);
    Json schema = j;
    schema["schema"] = "other/0";
    CHECK_THROWS_AS(load_catalog(schema, c.algebra()), ParseError);
  }
}

TEST_CASE("command line: results and exit codes") {
  SECTION("worked example") {
    auto r = run({"verify", "example51", "--part", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "part 1 (glue): PASS\n");
    auto all = run({"verify", "example51"});
    CHECK(all.code == 0);
    for (int p = 1; p <= 6; ++p) CHECK(all.out.find("part " + std::to_string(p) + " ") != std::string::npos);
    CHECK(all.out.find("FAIL") == std::string::npos);
  }
  SECTION("axioms and exactness") {
    auto r = run({"axioms", "ex51"});
    CHECK(r.code == 0);
    CHECK(r.out.find("i^*: not exact") != std::string::npos);
    for (auto f : {"i_*", "i^!", "j_!", "j^*", "j_*"}) CHECK(r.out.find(std::string(f) + ": exact") != std::string::npos);
  }
  SECTION("enumeration") {
    auto r = run({"--json", "stau", "enumerate", "Lprime"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("result").at("support_tau_tilting").size() == 5);
    CHECK(j.at("result").at("bijective") == true);
  }
  SECTION("determinism") {
    for (auto args : std::vector<std::vector<std::string>>{{"--json", "--actions", "indec", "ex51"},
                                                           {"--json", "glue", "ex51", "--left-module", "S(1)", "--right-module", "P(5)+P(4)"},
                                                           {"--json", "verify", "example51"}}) {
      auto a = run(args), b = run(args);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }
  SECTION("refusals exit with 2") {
    auto r = run({"glue", "ex51", "--left-module", "P(1)+S(1)", "--right-module", "P(3)+P(4)+S(4)", "--mode", "tau"});
    CHECK(r.code == 2);
    CHECK(r.out.find("outside T") != std::string::npos);
    CHECK(run({"restrict", "ex51", "--module", "X6+X7+X5+X8+X2", "--side", "A"}).code == 2);
    CHECK(run({"glue", "ex51", "--left-module", "P(1)", "--right-module", "P(3)", "--mode", "stau"}).code == 2);
  }
  SECTION("parse errors exit with 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"indec", "Nope"}).code == 1);
    CHECK(run({"restrict", "ex51", "--module", "P(9)", "--side", "C"}).code == 1);
    CHECK(run({"glue", "ex51", "--left-module", "S(1)", "--right-module", "P(5)", "--mode", "other"}).code == 1);
    std::string bad = temp_path("bad.alg");
    write(bad, "algebra \"A\" {\n  vertices 1 2\n}\n");
    auto r = run({"--def", bad, "indec", "A"});
    CHECK(r.code == 1);
    CHECK(r.err.find("3:1:") != std::string::npos);
    std::remove(bad.c_str());
  }
  SECTION("mismatches exit with 3") {
    Json expected = Json::parse(embedded::ex51_expected);
    expected["parts"]["1"]["result"].erase(0);
    std::string path = temp_path("expected.json");
    write(path, expected.dump());
    auto r = run({"verify", "example51", "--part", "1", "--expected", path});
    CHECK(r.code == 3);
    CHECK(r.out.find("FAIL  result") != std::string::npos);
    std::remove(path.c_str());
  }
  SECTION("catalog save, load and DOT export") {
    std::string cat = temp_path("cat.json"), dot = temp_path("ar.dot");
    REQUIRE(run({"indec", "Ldprime", "--save", cat, "--dot", dot}).code == 0);
    auto loaded = run({"indec", "Ldprime", "--load", cat});
    CHECK(loaded.code == 0);
    CHECK(loaded.out == run({"indec", "Ldprime"}).out);
    std::ifstream f(dot);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(text.rfind("digraph AR {", 0) == 0);
    CHECK(text.find("X4 -> X3") != std::string::npos);
    std::remove(cat.c_str());
    std::remove(dot.c_str());
  }
  SECTION("shipped definition file matches the built-in one") {
    auto a = run({"--def", std::string(TAUREC_DATA_DIR) + "/ex51.alg", "verify", "example51"});
    CHECK(a.code == 0);
  }
}
