#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using riskspace::cli::dispatch;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

struct Files {
  fs::path dir = fs::temp_directory_path() / "riskspace_cli_test";
  Files() {
    fs::remove_all(dir);
    fs::create_directories(dir / "set1");
    fs::create_directories(dir / "set2");
    write("avar05.json", R"({"kind":"avar","alpha":0.5})");
    write("avar09.json", R"({"kind":"avar","alpha":0.9})");
    write("ps.json", R"({"kind":"power_sqrt"})");
    write("flat.json", R"({"kind":"step","breakpoints":[0,1],"values":[1]})");
    write("four.csv", "value\n1\n2\n3\n4\n");
    write("bad.csv", "1\n2\nthree\n");
    write("measure.json", R"({"atoms":[[0,0.5],[0.5,0.5]]})");
    write("set1/a.json", R"({"kind":"avar","alpha":0.5})");
    write("set1/b.json", R"({"kind":"avar","alpha":0.9})");
    write("set2/a.json", R"({"kind":"avar","alpha":0.9})");
  }
  ~Files() { fs::remove_all(dir); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("cli eval and norm") {
  Files f;
  const auto r = run({"eval", "--spectrum", f("avar05.json"), "--samples", f("four.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["value"].get<double>() == doctest::Approx(3.5));
  CHECK(r.doc()["method"] == "quantile-integral");

  const auto both = run({"eval", "--spectrum", f("avar05.json"), "--samples", f("four.csv"), "--method", "both"});
  CHECK(both.code == 0);
  CHECK(both.doc()["residual"].get<double>() == 0.0);

  const auto n = run({"norm", "--spectrum", f("flat.json"), "--samples", f("four.csv")});
  CHECK(n.doc()["value"].get<double>() == doctest::Approx(2.5));
}

TEST_CASE("cli input and usage errors exit 2") {
  Files f;
  CHECK(run({"eval", "--spectrum", f("missing.json"), "--samples", f("four.csv")}).code == 2);
  const auto bad = run({"eval", "--spectrum", f("avar05.json"), "--samples", f("bad.csv")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(bad.out.empty());
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"escape", "--spectrum", f("ps.json"), "--q", "0.5"}).code == 2);
}

TEST_CASE("cli dual-norm and dominate") {
  Files f;
  const auto d = run({"dual-norm", "--spectrum", f("flat.json"), "--samples", f("four.csv")});
  REQUIRE(d.code == 0);
  CHECK(d.doc()["value"].get<double>() == doctest::Approx(4));
  CHECK(run({"dominate", "--spectrum", f("flat.json"), "--samples", f("four.csv"), "--eta", "4"}).code == 0);
  const auto v = run({"dominate", "--spectrum", f("flat.json"), "--samples", f("four.csv"), "--eta", "1"});
  CHECK(v.code == 1);
  CHECK(v.doc()["holds"] == false);
}

TEST_CASE("cli kusuoka round trip") {
  Files f;
  const auto m = run({"kusuoka", "to-measure", "--spectrum", f("avar05.json")});
  REQUIRE(m.code == 0);
  CHECK(m.doc()["atoms"].size() == 1);
  CHECK(m.doc()["atoms"][0][0].get<double>() == 0.5);
  const auto s = run({"kusuoka", "to-spectrum", "--measure", f("measure.json")});
  REQUIRE(s.code == 0);
  CHECK(s.doc()["values"][1].get<double>() == doctest::Approx(1.5));
  CHECK(run({"kusuoka", "to-measure", "--spectrum", f("ps.json")}).code == 2);
  const auto approx = run({"kusuoka", "to-measure", "--spectrum", f("ps.json"), "--cells", "8"});
  CHECK(approx.code == 0);
  CHECK(approx.doc()["atoms"][0][0].get<double>() == 0.0);
}

TEST_CASE("cli embed") {
  Files f;
  const auto c = run({"embed", "--from", f("avar05.json"), "--to", f("avar09.json")});
  REQUIRE(c.code == 0);
  CHECK(c.doc()["constant"].get<double>() == doctest::Approx(5));
  const auto inf = run({"embed", "--from", f("avar05.json"), "--to", f("ps.json")});
  CHECK(inf.doc()["constant"] == "inf");
  const auto set = run({"embed", "--set-from", f("set1"), "--set-to", f("set2")});
  CHECK(set.doc()["constant"].get<double>() == doctest::Approx(1));
  CHECK(run({"embed", "--from", f("avar05.json")}).code == 2);
}

TEST_CASE("cli escape, diverge, approx") {
  Files f;
  const auto lp = run({"escape", "--spectrum", f("ps.json"), "--q", "1.5", "--depth", "40"});
  REQUIRE(lp.code == 0);
  CHECK(lp.doc()["risk"].get<double>() <= 1.57067);
  const auto li = run({"escape", "--spectrum", f("ps.json"), "--depth", "30", "--mode", "linf"});
  REQUIRE(li.code == 0);
  CHECK(li.doc()["esssup"].get<double>() == 30);
  const auto dv = run({"diverge", "--spectrum", f("ps.json"), "--target", "10"});
  REQUIRE(dv.code == 0);
  CHECK(dv.doc()["exceeded"] == true);
  const auto ap = run({"approx", "--spectrum", f("avar05.json"), "--samples", f("four.csv"), "--eps", "0.01"});
  CHECK(ap.code == 0);
  CHECK(ap.doc()["error"].get<double>() < 0.01);
}

TEST_CASE("cli verify is deterministic") {
  const auto a = run({"verify", "--seed", "7", "--cases", "1"});
  const auto b = run({"verify", "--seed", "7", "--cases", "1"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = a.doc();
  std::vector<std::string> ids;
  for (const auto& inv : doc["invariants"]) ids.push_back(inv["id"]);
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  for (const char* want : {"chebyshev", "holder", "kusuoka-mixture", "duality", "sandwich", "round-trip"}) {
    CHECK(std::find(ids.begin(), ids.end(), want) != ids.end());
  }
  for (const auto& inv : doc["invariants"]) CHECK(!inv["anchor"].get<std::string>().empty());

  const auto full = run({"verify", "--seed", "7", "--cases", "500", "--json-indent", "-1"});
  CHECK(full.code == 0);
  CHECK(full.doc()["failures"] == 0);
  CHECK(full.out.find('\n') == full.out.size() - 1);
}
