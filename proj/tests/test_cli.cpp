#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ramsplit/cli.hpp"
#include "ramsplit/json_io.hpp"

using namespace ramsplit;
using json_io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Every nonzero exit leaves exactly one JSON line with the given kind.
void check_error_line(const Run& r, const std::string& kind) {
  REQUIRE(!r.err.empty());
  CHECK(r.err.back() == '\n');
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  const json e = json::parse(r.err);
  CHECK(e.at("error") == kind);
  CHECK(e.at("message").is_string());
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "cli_test_" + name + ".json";
  std::ofstream(path) << text;
  return path;
}

const std::string kTriangle = R"({"facets": [["a", "b", "c"]]})";
const std::string kDual = R"({"ambient_dim": 3, "divisors": ["D1", "D2", "D3"], "facets": [["D1", "D2", "D3"]]})";

} // namespace

TEST_CASE("pirutka check: verdicts and exit codes") {
  const auto ok = run({"pirutka", "check", "--builtin", "clever3x3", "--prime", "5"});
  CHECK(ok.code == 0);
  CHECK(ok.err.empty());
  CHECK(ok.parsed() == json{{"verdict", true}, {"witness", nullptr}});

  const auto no = run({"pirutka", "check", "--builtin", "clever3x3", "-l", "3"});
  CHECK(no.code == 1);
  check_error_line(no, "negative");
  const json w = no.parsed().at("witness");
  CHECK(w.at("I") == json{1});
  CHECK(w.at("J") == json{2});
  CHECK(w.at("rank") == 0);

  const auto inline_matrix =
      run({"pirutka", "check", "--matrix", R"({"n": 2, "d": 2, "entries": [[1, 1], [1, 2]]})", "-l", "3"});
  CHECK(inline_matrix.code == 0);
}

TEST_CASE("usage errors exit with 2") {
  check_error_line(run({}), "usage");
  CHECK(run({}).code == 2);
  CHECK(run({"pirutka"}).code == 2);
  CHECK(run({"pirutka", "frobnicate"}).code == 2);
  CHECK(run({"pirutka", "check", "--builtin", "clever3x3"}).code == 2);
  const auto both = run({"pirutka", "check", "--builtin", "clever3x3", "--matrix", "[[1]]", "-l", "3"});
  CHECK(both.code == 2);
  check_error_line(both, "usage");
  const auto neither = run({"pirutka", "check", "-l", "3"});
  CHECK(neither.code == 2);
  check_error_line(neither, "usage");
  CHECK(run({"--format", "xml", "pirutka", "check", "--builtin", "clever3x3", "-l", "5"}).code == 2);
}

TEST_CASE("invalid input exits with 3") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"pirutka", "check", "--builtin", "clever3x3", "-l", "4"},
           {"pirutka", "check", "--builtin", "nonsense", "-l", "3"},
           {"pirutka", "check", "--matrix", R"({"n": 3, "entries": [[1, 1], [1, 2]]})", "-l", "3"},
           {"pirutka", "check", "--matrix", "[[1, 2], [3]]", "-l", "3"},
           {"pirutka", "check", "--matrix", "[[1, 2]", "-l", "3"},
           {"pirutka", "check", "--matrix", "no_such_file.json", "-l", "3"},
           {"pirutka", "check", "--matrix", "[[1, 2]]", "-l", "3"},
           {"complex", "subdivide", "--complex", kTriangle, "--simplex", R"(["a", "z"])"},
           {"split", "residue", "--symbol", R"({"l": 3, "d": 2})", "--k", "3"},
           {"split", "certify", "--builtin", "stacked:2", "-l", "3", "--stratum", R"({"J": [0]})", "--j0", "1"},
       }) {
    CAPTURE(args);
    const auto r = run(args);
    CHECK(r.code == 3);
    check_error_line(r, "invalid_input");
  }
}

TEST_CASE("budget and bound errors exit with 4") {
  const auto big = run({"pirutka", "search", "--n", "4", "--d", "4", "-l", "5"});
  CHECK(big.code == 4);
  CHECK(big.out.empty());
  const json last = json::parse(big.err.substr(big.err.rfind('\n', big.err.size() - 2) + 1));
  CHECK(last.at("error") == "budget");

  const auto bound = run({"pirutka", "bad-primes", "--matrix", "[[1022117]]", "--bound", "100"});
  CHECK(bound.code == 4);
  check_error_line(bound, "budget");
}

TEST_CASE("pirutka search, bad-primes, construct and bound") {
  const auto found = run({"pirutka", "search", "--n", "2", "--d", "2", "-l", "3"});
  CHECK(found.code == 0);
  CHECK(found.parsed().at("found").at("entries") == json{{1, 1}, {1, 2}});
  CHECK(found.parsed().at("examined") == 42);

  const auto none = run({"pirutka", "search", "--n", "2", "--d", "2", "-l", "2"});
  CHECK(none.code == 1);
  CHECK(none.parsed().at("found").is_null());
  CHECK(none.parsed().at("examined") == 16);

  const auto one = run({"pirutka", "search", "--n", "3", "--d", "3", "-l", "3", "--workers", "1"});
  const auto four = run({"pirutka", "search", "--n", "3", "--d", "3", "-l", "3", "--workers", "4"});
  CHECK(one.out == four.out);
  CHECK(one.parsed().at("examined") == 19683);

  CHECK(run({"pirutka", "bad-primes", "--builtin", "clever3x3"}).parsed() ==
        json{{"all_primes", false}, {"primes", {2, 3}}});
  CHECK(run({"pirutka", "bad-primes", "--builtin", "allprimes4x3"}).parsed().at("primes") == json::array());

  const auto g = run({"pirutka", "construct", "--n", "3", "-l", "11"});
  CHECK(g.code == 0);
  CHECK(g.parsed().at("verified") == true);
  CHECK(run({"pirutka", "construct", "--n", "2", "-l", "2"}).code == 1);

  CHECK(run({"pirutka", "bound", "-l", "5", "--dim", "2"}).parsed() ==
        json{{"exponent", 4}, {"rows", 3}, {"matrix", "clever3x3"}});
  CHECK(run({"pirutka", "bound", "-l", "2", "--dim", "2"}).parsed().at("exponent") == 5);
}

TEST_CASE("text format") {
  const auto r = run({"pirutka", "check", "--builtin", "clever3x3", "-l", "5", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "verdict: true\nwitness: null\n");
  const auto before = run({"--format", "text", "pirutka", "bound", "-l", "5", "--dim", "2"});
  CHECK(before.out == "exponent: 4\nmatrix: clever3x3\nrows: 3\n");
}

TEST_CASE("complex commands and label round trips") {
  const auto sd = run({"complex", "subdivide", "--complex", kTriangle, "--barycentric"});
  REQUIRE(sd.code == 0);
  const auto parsed = json_io::complex_from_json(sd.parsed());
  CHECK(parsed.vertex_count() == 7);
  CHECK(parsed.facets().size() == 6);
  CHECK(json_io::to_json(parsed) == sd.parsed());

  const auto same = run({"complex", "subdivide", "--complex", kTriangle, "--simplex", "[]"});
  CHECK(same.parsed() == json_io::to_json(json_io::complex_from_json(json::parse(kTriangle))));
  CHECK(run({"complex", "subdivide", "--complex", kTriangle}).code == 2);

  const auto order = run({"complex", "order", "--complex", kTriangle});
  CHECK(json_io::complex_from_json(order.parsed()).vertex_count() == 7);

  const auto iso = run({"complex", "iso", "--complex", kTriangle});
  CHECK(iso.code == 0);
  CHECK(iso.parsed().at("isomorphic") == true);
  CHECK(iso.parsed().at("bijection").size() == 7);

  const auto rnd = run({"complex", "iso", "--random", "30", "--seed", "3"});
  CHECK(rnd.code == 0);
  CHECK(rnd.out == run({"complex", "iso", "--random", "30", "--seed", "3"}).out);
  CHECK(rnd.parsed().at("trials") == 30);

  const auto colour = run({"complex", "color", "--complex", order.out});
  CHECK(colour.code == 0);
  CHECK(colour.parsed().at("valid") == true);
  CHECK(run({"complex", "color", "--complex", kTriangle, "--from-base"}).out == colour.out);
  CHECK(run({"complex", "color", "--complex", kTriangle}).code == 3);
}

TEST_CASE("dual commands") {
  const auto seq = run({"dual", "sequence", "--dual", kDual});
  REQUIRE(seq.code == 0);
  CHECK(seq.parsed().at("trace").size() == 4);
  const json result = seq.parsed().at("result");
  CHECK(json_io::to_json(json_io::dual_from_json(result)) == result);

  const auto reduce = run({"dual", "reduce", "--dual", kDual});
  CHECK(reduce.parsed().at("length") == 3);
  CHECK(reduce.parsed().at("independent") == true);
  CHECK(reduce.parsed().at("groups") == json{{"D1", "D2", "D3"}, {"E2", "E3", "E4"}, {"E1"}});
  CHECK(run({"dual", "reduce", "--dual", kDual, "--dim", "2"}).code == 3);

  const std::string path = write_temp("dual", kDual);
  const auto blown = run({"dual", "blowup", "--dual", path, "--simplex", R"(["D1", "D2"])"});
  CHECK(blown.code == 0);
  CHECK(blown.parsed().at("exceptional").at(0).at("name") == "E1");
  // blowing up a vertex keeps its name declared
  const auto at_vertex = run({"dual", "blowup", "--dual", blown.out, "--simplex", R"(["D3"])"});
  CHECK(at_vertex.code == 0);
  CHECK(at_vertex.parsed().at("divisors") == json{"D1", "D2", "D3"});
  CHECK(json_io::to_json(json_io::dual_from_json(at_vertex.parsed())) == at_vertex.parsed());
  std::remove(path.c_str());
}

TEST_CASE("split commands") {
  const auto cert = run({"split", "certify", "--builtin", "allprimes4x3", "-l", "2", "--stratum",
                         R"({"J": [1, 2, 3], "Iprime": []})", "--j0", "1"});
  REQUIRE(cert.code == 0);
  CHECK(cert.parsed().at("certificate") ==
        json{{"j0", 1}, {"I", {1, 2, 3, 4}}, {"a", {1, 0, 1, 0}}, {"r", 1}, {"b", {{{"j", 2}, {"b", 2}}, {{"j", 3}, {"b", 2}}}}});

  const auto ok = run({"split", "verify", "--builtin", "allprimes4x3", "-l", "2", "--certificate", cert.out});
  CHECK(ok.code == 0);
  CHECK(ok.parsed() == json{{"valid", true}, {"reason", "none"}});

  json tampered = cert.parsed();
  tampered["certificate"]["r"] = 0;
  const auto bad = run({"split", "verify", "--builtin", "allprimes4x3", "-l", "2", "--certificate", tampered.dump()});
  CHECK(bad.code == 1);
  CHECK(bad.parsed().at("reason") == "r_congruence");
  check_error_line(bad, "negative");

  const auto fail = run({"split", "certify", "--builtin", "clever3x3", "-l", "3", "--stratum",
                         R"({"J": [2], "Iprime": [2, 3]})", "--j0", "2"});
  CHECK(fail.code == 1);
  CHECK(fail.parsed().at("certificate").is_null());

  const auto uni = run({"split", "universal", "--builtin", "clever3x3", "-l", "5"});
  CHECK(uni.code == 0);
  CHECK(uni.parsed().at("checked") == 30);
  CHECK(uni.parsed().at("attempts").size() == 30);
  const auto uni_bad = run({"split", "universal", "--builtin", "clever3x3", "-l", "2", "--brief"});
  CHECK(uni_bad.code == 1);
  CHECK_FALSE(uni_bad.parsed().contains("attempts"));
  CHECK(uni_bad.parsed().at("first_failure").at("certificate").is_null());

  const std::string sym = R"({"l": 3, "d": 2, "units": [{"u": "u", "i": 1, "c": 1}]})";
  const auto res = run({"split", "residue", "--symbol", sym, "--k", "1"});
  CHECK(res.parsed().at("units") == json{{{"u", "u"}, {"c", 1}}});
  CHECK(run({"split", "residue", "--symbol", sym, "--k", "2"}).parsed().at("zero") == true);

  const auto pulled = run({"split", "pullback", "--symbol", sym, "--coords", "1"});
  CHECK(pulled.parsed().at("units") == json::array());
  const auto untouched = run({"split", "pullback", "--symbol", sym, "--coords", "2"});
  CHECK(untouched.parsed().at("units").size() == 1);

  const auto norm = run({"split", "normalize", "--symbols",
                         R"({"l": 3, "d": 2, "symbols": [{"f": {"e": [1, 0]}, "g": {"e": [1, 0]}}]})"});
  CHECK(norm.parsed().at("units") == json{{{"u", "-1"}, {"i", 1}, {"c", 1}}});
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pirutka") != std::string::npos);
}
