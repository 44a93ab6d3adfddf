#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dhr/error.hpp"
#include "dhr/parse.hpp"
#include "dhr/report.hpp"

using namespace dhr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string &args, const std::string &env = "") {
  std::string cmd = env + " " DHR_TOOL " " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path temp_file(const std::string &name, const std::string &text) {
  fs::path p = fs::temp_directory_path() / ("dhr_test_" + name);
  std::ofstream(p) << text;
  return p;
}

std::string read(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("presets") {
  auto q = find_preset("quintic");
  REQUIRE(q);
  CHECK(q->n == 3);
  CHECK(q->hyper->r1 == Rational(1, 5));
  CHECK(q->hyper->r2 == Rational(2, 5));
  CHECK(q->hyper->c == 3125);
  auto p8 = find_preset("8");
  REQUIRE(p8);
  CHECK(p8->hyper->r1 == Rational(1, 2));
  CHECK(p8->hyper->c == 256);
  CHECK(find_preset("X(2,2,2,2)")->index == 8);
  CHECK(find_preset("table1:8")->index == 8);
  auto p14 = find_preset("table1:14");
  CHECK(p14->hyper->r1 == Rational(1, 12));
  CHECK(p14->hyper->r2 == Rational(5, 12));
  CHECK(p14->hyper->c == 2985984);
  CHECK(table1_presets().size() == 14);
  CHECK(!find_preset("table1:15"));
  CHECK_THROWS_AS(load_family("no-such-family"), Error);
  // a0 = c z (r1 r2 - r1^2 r2 - r1 r2^2 + r1^2 r2^2) / (1 - c z)
  for (auto &f : table1_presets()) {
    Rational r1 = f.hyper->r1, r2 = f.hyper->r2, c = f.hyper->c;
    RatFunc cz = RatFunc(c) * RatFunc::z();
    RatFunc a0 = cz * RatFunc(r1 * r2 - r1 * r1 * r2 - r1 * r2 * r2 + r1 * r1 * r2 * r2) / (RatFunc(1) - cz);
    CHECK(f.a[0] == a0);
    CHECK(f.a[3] == RatFunc(2) * cz / (RatFunc(1) - cz));
  }
}

TEST_CASE("family files") {
  // roots 1/3, 1/3, 2/3, 2/3: e2 = 13/9, e3 = 4/9, e4 = 4/81 by hand
  auto p = temp_file("x5.fam",
                     "# explicit coefficients\nname = \"explicit\"\nn = 3\n"
                     "a3 = \"2*729*z/(1 - 729*z)\"\na2 = \"13/9*729*z/(1 - 729*z)\"\n"
                     "a1 = \"4/9*729*z/(1 - 729*z)\"\na0 = \"4/81*729*z/(1 - 729*z)\"\n");
  FamilySpec f = load_family(p.string());
  FamilySpec five = *find_preset("5");
  CHECK(five.hyper->r1 == Rational(1, 3));
  CHECK(five.hyper->c == 729);
  for (int i = 0; i <= 3; ++i) CHECK(f.a[i] == five.a[i]);
  CHECK(f.name == "explicit");

  FamilySpec h = parse_family_text("r1 = 1/5\nr2 = 2/5\nc = 3125\n", "inline");
  for (int i = 0; i <= 3; ++i) CHECK(h.a[i] == find_preset("quintic")->a[i]);

  CHECK_THROWS_AS(parse_family_text("n = 3\nbogus = 1\n", "x"), Error);
  CHECK_THROWS_AS(parse_family_text("n = 3\nn = 3\n", "x"), Error);
  CHECK_THROWS_AS(parse_family_text("r1 = 1/5\nr2 = 2/5\n", "x"), Error);
  try {
    parse_family_text("n = 1\na0 = \"z + * 2\"\na1 = \"0\"\n", "x");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("golden files") {
  for (auto &[name, text] : golden_texts()) {
    INFO(name);
    CHECK(check_golden(name, text).status == "match");
  }
  // golden lines parse back to the derived field
  std::istringstream in(read(fs::path(golden_dir()) / "field_n3.golden"));
  std::string line;
  ODESystem sys = derive_vector_field(3);
  std::size_t k = 0;
  while (std::getline(in, line)) {
    auto eq = line.find("' = ");
    if (eq == std::string::npos) continue;
    CHECK(expr_equal(parse_expr(line.substr(eq + 4)), sys.rhs.at(k++)));
  }
  CHECK(k == 7);
  GoldenVerdict v = check_golden("field_n3.golden", "n: 3\n");
  CHECK(v.status == "mismatch");
  CHECK(v.first_difference == 2);
}

TEST_CASE("cli derive and verify") {
  Run d = run("derive --family quintic --out json");
  CHECK(d.status == 0);
  Json j = Json::parse(d.out);
  CHECK(j["rhs"]["t1"] == "1 * t2");
  CHECK(j["rhs"]["t4"] == "-1 * t6");
  CHECK(j["variables"].size() == 7);
  CHECK(j["atilde"]["rational"] == true);

  Run d14 = run("derive --family table1:14 --out math");
  CHECK(d14.status == 0);
  CHECK(d14.out.find("t1' = t₂") != std::string::npos);

  Run v = run("verify --suite ramanujan --order 50");
  CHECK(v.status == 0);
  CHECK(Json::parse(v.out)["passed"] == true);
  CHECK(Json::parse(run("verify --suite pushforward").out)["passed"] == true);
  CHECK(Json::parse(run("verify --suite darboux-halphen --order 40").out)["passed"] == true);

  CHECK(run("derive --family nope").status == 1);
  CHECK(run("verify --suite nope").status != 0);
}

TEST_CASE("cli exit codes") {
  auto bad = temp_file("bad.fam", "n = 3\na3 = \"2*3125*z/(1-3125*z)\"\na2 = \"z\"\na1 = \"0\"\na0 = \"z\"\n");
  CHECK(run("selfdual --family " + bad.string()).status == 0);
  CHECK(run("--strict selfdual --family " + bad.string()).status == 2);
  CHECK(run("derive --family " + bad.string()).status == 1);
  CHECK(run("--strict selfdual --family quintic").status == 0);

  fs::path empty = fs::temp_directory_path() / "dhr_test_empty_goldens";
  fs::create_directories(empty);
  Run g = run("--strict goldens", "DHR_GOLDEN_DIR=" + empty.string());
  CHECK(g.status == 2);
  CHECK(Json::parse(g.out)[0]["status"] == "missing");
  CHECK(run("goldens").status == 0);
}

TEST_CASE("cli integrate") {
  auto csv = fs::temp_directory_path() / "dhr_test_traj.csv";
  Run r = run("integrate --system ramanujan-normalized --from -12.566370614359172 --to -9.42477796076938 "
              "--step 1e-3 --init 1,1,1 --csv " + csv.string());
  CHECK(r.status == 0);
  std::string text = read(csv);
  CHECK(text.rfind("t,x1,x2,x3\n", 0) == 0);
  Run q = run("integrate --family quintic --from 0 --to 0.01 --step 1e-3 --init 1e-4,1,0.1,1,0.2,0.1,0.3");
  CHECK(q.status == 0);
  CHECK(Json::parse(q.out)["final"].size() == 7);
  CHECK(run("integrate --family quintic --from 0 --to 0.01 --init 1e-4,0,0.1,1,0.2,0.1,0.3").status == 1);
}

TEST_CASE("report is reproducible") {
  auto a = fs::temp_directory_path() / "dhr_test_report_a.json";
  auto b = fs::temp_directory_path() / "dhr_test_report_b.json";
  CHECK(run("--strict report -o " + a.string()).status == 0);
  CHECK(run("report -o " + b.string()).status == 0);
  CHECK(read(a) == read(b));
  Json j = Json::parse(read(a));
  CHECK(j["summary"]["presets"] == 14);
  CHECK(j["summary"]["verdict_failures"] == 0);
  for (auto &p : j["presets"])
    for (auto &[name, stage] : p["stages"].items()) {
      INFO(p["name"] << " " << name);
      CHECK(stage["pass"] == true);
    }
}
