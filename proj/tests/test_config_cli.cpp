#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "homog/cli.hpp"
#include "homog/config.hpp"
#include "homog/errors.hpp"
#include "oracles.hpp"

using namespace homog;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "homog");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("homog_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

using Table = std::vector<std::vector<std::string>>;

Table csv(const fs::path& p) {
  Table t;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    t.push_back(row);
  }
  return t;
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.at(0).size(); ++i)
    if (t[0][i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("number and list parsing") {
  CHECK(parse_number("1/8") == 0.125);
  CHECK(parse_number(" 1e-3 ") == 1e-3);
  CHECK_THROWS_AS(parse_number("abc"), ConfigError);
  CHECK_THROWS_AS(parse_number("1/0"), ConfigError);
  CHECK(parse_list("1/8, 1/16,1/32") == std::vector<double>{0.125, 0.0625, 0.03125});
  for (double v : {0.1, 1.0 / 3, 1e-300, 12345.678, -2.5}) CHECK(parse_number(format_number(v)) == v);
}

TEST_CASE("config documents") {
  auto doc = ConfigDocument::parse("# c\n[scenario]\npreset = Problem1\npaths = 16\n\n[cell]\n; note\nR=4 # trailing\n");
  CHECK(doc.get("scenario", "paths") == "16");
  CHECK(doc.get("cell", "R") == "4");
  doc.apply_override("scenario.paths=32");
  CHECK(doc.get_all("scenario", "paths") == std::vector<std::string>{"32"});
  const auto cfg = resolve(doc);
  CHECK(cfg.scenario.name == "Problem1");
  CHECK(cfg.scenario.paths == 32);
  CHECK(cfg.cell.R == 4.0);

  // round trip through the explicit document
  const auto again = resolve(ConfigDocument::parse(to_document(cfg).to_string()));
  CHECK(to_document(again).to_string() == to_document(cfg).to_string());
  CHECK(again.scenario.epsilons == cfg.scenario.epsilons);

  CHECK_THROWS_AS(resolve(ConfigDocument::parse("[scenario]\nbogus = 1\n")), ConfigError);
  CHECK_THROWS_AS(resolve(ConfigDocument::parse("[nosuch]\nx = 1\n")), ConfigError);
  CHECK_THROWS_AS(ConfigDocument::parse("[scenario\npaths = 1\n"), ConfigError);
  CHECK_THROWS_AS(ConfigDocument::parse("[scenario]\njust text\n"), ConfigError);
  CHECK_THROWS_AS(resolve(ConfigDocument::parse("[scenario]\npaths = many\n")), ConfigError);
  CHECK_THROWS_AS(doc.apply_override("noequals"), ConfigError);
}

TEST_CASE("preset-list and usage errors") {
  const auto r = run({"preset-list"});
  CHECK(r.code == 0);
  for (const char* n : {"constant", "Problem1", "Problem2", "Problem3", "Problem4", "Problem5"})
    CHECK(r.out.find(n) != std::string::npos);
  CHECK(run({}).code == kExitConfig);
  CHECK(run({"frobnicate"}).code == kExitConfig);
  CHECK(run({"effective", "--threads", "0"}).code == kExitConfig);
  CHECK(run({"effective", "--config", "/nonexistent/cfg.ini"}).code == kExitConfig);
}

TEST_CASE("malformed config and unknown keys exit 2") {
  const auto dir = scratch("bad");
  const auto bad = write(dir / "bad.ini", "[scenario\npreset = Problem1\n");
  const auto r = run({"effective", "--config", bad.string(), "--out", (dir / "o").string()});
  CHECK(r.code == kExitConfig);
  CHECK_FALSE(r.err.empty());
  const auto unk = write(dir / "unk.ini", "[scenario]\npreset = Problem1\ncolour = blue\n");
  const auto u = run({"effective", "--config", unk.string(), "--out", (dir / "o").string()});
  CHECK(u.code == kExitConfig);
  CHECK(u.err.find("colour") != std::string::npos);
  CHECK(run({"effective", "--override", "scenario.preset=Nope", "--out", (dir / "o").string()}).code ==
        kExitConfig);
}

TEST_CASE("cell-solve on the constant preset gives a zero corrector") {
  const auto dir = scratch("const");
  const auto r = run({"cell-solve", "--override", "scenario.preset=constant", "--override", "cell.mode=truncated",
                      "--override", "cell.R=2", "--override", "cell.points_per_unit=8", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto t = csv(dir / "cell_solution.csv");
  CHECK(t[0] == std::vector<std::string>{"node", "y1", "y2", "chi"});
  CHECK(t.size() == 1 + 33);
  const auto c = column(t, "chi");
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(std::stod(t[i][c]) == 0.0);
    CHECK(t[i][2].empty());
  }
  CHECK(fs::exists(dir / "cell_flux.csv"));
  CHECK(fs::exists(dir / "manifest.txt"));
}

TEST_CASE("periodic flux of Problem1 is constant and equals sqrt3") {
  const auto dir = scratch("flux");
  const auto r = run({"cell-solve", "--override", "scenario.preset=Problem1", "--override", "cell.mode=periodic",
                      "--override", "cell.periodic_cells=256", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto t = csv(dir / "cell_flux.csv");
  const auto c = column(t, "flux1");
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(std::stod(t[i][c]) == doctest::Approx(oracle::sqrt3()).epsilon(1e-8));
}

TEST_CASE("effective on Problem1") {
  const auto dir = scratch("eff");
  const auto r = run({"effective", "--override", "scenario.preset=Problem1", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("1.73205") != std::string::npos);
  const auto t = csv(dir / "effective.csv");
  const auto a = column(t, "a11");
  const auto p = column(t, "provenance");
  CHECK(t[1][p] == "exact-periodic");
  CHECK(std::stod(t[1][a]) == doctest::Approx(oracle::sqrt3()).epsilon(1e-8));
  CHECK(t[1][column(t, "a22")].empty());
}

TEST_CASE("converge-R") {
  SUBCASE("constant field has a zero error column") {
    const auto dir = scratch("conv_const");
    const auto r = run({"converge-R", "--override", "scenario.preset=constant", "--override", "cell.radii=1,2,4",
                        "--override", "cell.points_per_unit=8", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto t = csv(dir / "convergence.csv");
    CHECK(t.size() == 4);
    const auto e = column(t, "error");
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(std::stod(t[i][e]) == 0.0);
  }
  SUBCASE("quasi-periodic Cauchy differences decrease") {
    const auto dir = scratch("conv_qp");
    const auto r = run({"converge-R", "--override", "scenario.preset=Problem2", "--override",
                        "cell.radii=8,16,32,64", "--threads", "2", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto t = csv(dir / "convergence.csv");
    REQUIRE(t.size() == 5);
    const auto c = column(t, "cauchy");
    for (std::size_t i = 3; i < t.size(); ++i) CHECK(std::stod(t[i][c]) < std::stod(t[i - 1][c]));
  }
}

TEST_CASE("homog-compare") {
  const auto dir = scratch("cmp");
  const std::vector<std::string> small{"--override", "scenario.epsilons=1/2,1/4,1/8", "--override",
                                       "scenario.cells=128", "--override", "scenario.dt=1/256", "--override",
                                       "scenario.paths=8", "--override", "scenario.stride=4"};
  auto args = std::vector<std::string>{"homog-compare", "--override", "scenario.preset=constant", "--out",
                                       (dir / "a").string()};
  args.insert(args.end(), small.begin(), small.end());
  const auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("verdict: PASS") != std::string::npos);
  const auto t = csv(dir / "a" / "errors.csv");
  CHECK(t.size() == 1 + 24);
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(std::stod(t[i][column(t, "e")]) == 0.0);
  CHECK(fs::exists(dir / "a" / "summary.csv"));

  // under-resolved grid is refused
  const auto u = run({"homog-compare", "--override", "scenario.preset=Problem1", "--override", "scenario.cells=256",
                      "--override", "scenario.paths=8", "--out", (dir / "u").string()});
  CHECK(u.code == kExitPrecondition);
  CHECK(u.err.find("512") != std::string::npos);
}

TEST_CASE("outputs are reproducible, also from the manifest") {
  const auto dir = scratch("repro");
  const std::vector<std::string> base{"--override", "scenario.preset=Problem3", "--override", "scenario.epsilons=1/2,1/4,1/8",
                                      "--override", "scenario.cells=128", "--override", "scenario.dt=1/256",
                                      "--override", "scenario.paths=8", "--override", "scenario.stride=4",
                                      "--seed", "77"};
  auto a = std::vector<std::string>{"homog-compare", "--out", (dir / "a").string()};
  a.insert(a.end(), base.begin(), base.end());
  auto b = std::vector<std::string>{"homog-compare", "--threads", "3", "--out", (dir / "b").string()};
  b.insert(b.end(), base.begin(), base.end());
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  const auto m = run({"homog-compare", "--config", (dir / "a" / "manifest.txt").string(), "--out", (dir / "c").string()});
  REQUIRE(m.code == 0);
  for (const char* f : {"errors.csv", "summary.csv"}) {
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    CHECK(slurp(dir / "a" / f) == slurp(dir / "c" / f));
  }
  CHECK(slurp(dir / "a" / "manifest.txt").find("reproduce: homog homog-compare") != std::string::npos);

  // spde-run: same seed, same trajectory
  const std::vector<std::string> s{"spde-run", "--override", "scenario.preset=Problem1", "--override", "scenario.cells=128",
                                   "--override", "scenario.dt=1/256", "--override", "spde.epsilon=1/4",
                                   "--override", "spde.snapshots=true"};
  auto s1 = s;
  s1.insert(s1.end(), {"--out", (dir / "s1").string()});
  auto s2 = s;
  s2.insert(s2.end(), {"--out", (dir / "s2").string()});
  REQUIRE(run(s1).code == 0);
  REQUIRE(run(s2).code == 0);
  CHECK(slurp(dir / "s1" / "trajectory.csv") == slurp(dir / "s2" / "trajectory.csv"));
  CHECK(slurp(dir / "s1" / "snapshots.csv") == slurp(dir / "s2" / "snapshots.csv"));
  const auto tr = csv(dir / "s1" / "trajectory.csv");
  CHECK(tr[0] == std::vector<std::string>{"t", "h1", "l2v", "energy", "sup4_h1", "sup4_l2v"});
  CHECK(tr.size() == 1 + 257);
}

TEST_CASE("2D corrector with an unattainable tolerance exits 4") {
  const auto dir = scratch("tol");
  const auto cfg = write(dir / "cfg.ini",
                         "[coefficient]\ndimension = 2\nalpha = 0.5\na11.constant = 2\na11.cos = 1 : 1,0\n"
                         "a22.constant = 2\na22.cos = 1 : 1,0\n"
                         "[scenario]\nu0.cos = 0.5 : 0.5,-0.5\nu0.cos = -0.5 : 0.5,0.5\n"
                         "[cell]\nmode = truncated\nR = 2\npoints_per_unit = 16\n");
  const auto ok = run({"cell-solve", "--config", cfg.string(), "--out", (dir / "ok").string()});
  REQUIRE(ok.code == 0);
  const auto t = csv(dir / "ok" / "cell_solution.csv");
  CHECK(t.size() == 1 + 65 * 65);
  CHECK_FALSE(t[1][2].empty());
  const auto r = run({"cell-solve", "--config", cfg.string(), "--override", "cell.tolerance=1e-300", "--out",
                      (dir / "bad").string()});
  CHECK(r.code == kExitSolver);
  CHECK(r.err.find("iteration cap") != std::string::npos);
}
