#include <filesystem>
#include <fstream>

#include "cli_runner.hpp"
#include "doctest.h"
#include "flatkahler/catalog.hpp"
#include "flatkahler/manifold_io.hpp"

namespace fs = std::filesystem;
using namespace flatkahler;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("flatkahler_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("catalog piped into hodge reports b1 = 0 for the D4 threefold") {
  const auto r = cli::run("catalog d4_threefold | " + cli::tool() + " hodge -");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("b_1 = 0\n") != std::string::npos);
}

TEST_CASE("square 2-torus admits non-algebraic deformations") {
  const auto r = cli::run("catalog torus2_square | " + cli::tool() + " obstruct -");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "non-algebraic deformations: YES (h^{2,0} = 1)\n");
  const auto b = cli::run("catalog bielliptic_d4 | " + cli::tool() + " obstruct -");
  CHECK(b.out == "non-algebraic deformations: NO (h^{2,0} = 0)\n");
}

TEST_CASE("catalog output round-trips byte-identically") {
  TempDir dir;
  for (const auto& e : catalog::list_catalog()) {
    INFO(e.name);
    const std::string f = dir.file(e.name + ".json");
    REQUIRE(cli::run("catalog " + e.name + " --out '" + f + "'").exit_code == 0);
    const std::string text = io::read_file(f);
    CHECK(io::to_json(io::from_json(text)) == text);
    CHECK(cli::run("catalog " + e.name).out == text);
  }
}

TEST_CASE("exit-code contract") {
  TempDir dir;
  const std::string good = dir.file("good.json");
  io::write_manifold(good, catalog::build("bielliptic_d2"));
  CHECK(cli::run("validate '" + good + "'").exit_code == 0);

  const std::string not_free = dir.file("not_free.json");
  io::write_manifold(not_free, catalog::bielliptic(4, {ratmath::Rational(1, 2), 0}));
  const auto nf = cli::run("validate '" + not_free + "'");
  CHECK(nf.exit_code == 1);
  CHECK(nf.out.find("valid: no") != std::string::npos);

  const std::string bad_rot = dir.file("bad_rot.json");
  write(bad_rot, R"({"label":"x","n":1,"cplx":[[0,-1],[1,0]],"generators":[{"rotation":[[2,0],[0,1]],"translation":["0","0"]}]})");
  CHECK(cli::run("validate '" + bad_rot + "'").exit_code == 1);

  const std::string garbage = dir.file("garbage.json");
  write(garbage, "{ this is not json");
  CHECK(cli::run("validate '" + garbage + "'").exit_code == 2);
  CHECK(cli::run("hodge '" + dir.file("missing.json") + "'").exit_code == 2);
  CHECK(cli::run("no-such-command").exit_code == 2);
  CHECK(cli::run("scan '" + good + "' --grid 10").exit_code == 2);
  CHECK(cli::run("catalog no_such_entry").exit_code == 1);

  // Scanning needs a holomorphic 2-form; bielliptic surfaces have none.
  CHECK(cli::run("scan '" + good + "' --form 0 --grid 200").exit_code == 1);
}

TEST_CASE("scan writes a CSV with one row per grid point") {
  TempDir dir;
  const std::string f = dir.file("t.json");
  io::write_manifold(f, catalog::build("torus2_square"));
  const std::string csv = dir.file("t.csv");
  REQUIRE(cli::run("scan '" + f + "' --form 0 --grid 500 --out '" + csv + "'").exit_code == 0);
  const std::string text = io::read_file(csv);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 502);
  CHECK(text.rfind("q_a,q_b,q_c,residual\n", 0) == 0);
  CHECK(text.find("# classification=") != std::string::npos);
  // Byte-identical on a second run, and with a different thread count.
  CHECK(cli::run("scan '" + f + "' --form 0 --grid 500").out == text);
  CHECK(cli::run("scan '" + f + "' --form 0 --grid 500 2>/dev/null; FLATKAHLER_THREADS=3 " + cli::tool() + " scan '" + f +
                 "' --form 0 --grid 500")
            .out == text + text);
  REQUIRE(cli::run("scan '" + f + "' --all --grid 300 --out '" + dir.file("all.csv") + "'").exit_code == 0);
  for (int k = 0; k < 6; ++k) CHECK(fs::exists(dir.file("all_" + std::to_string(k) + ".csv")));
}

TEST_CASE("double command") {
  TempDir dir;
  const std::string f = dir.file("b.json");
  io::write_manifold(f, catalog::build("bielliptic_d2"));
  const std::string q = dir.file("bq.json");
  REQUIRE(cli::run("double '" + f + "' --out '" + q + "'").exit_code == 0);
  CHECK(cli::run("hodge '" + q + "'").out.find("b_1 = 4\n") != std::string::npos);
  const auto co = cli::run("double '" + f + "' --co | " + cli::tool() + " hodge -");
  CHECK(co.exit_code == 0);
  CHECK(co.out.find("b_1 = 4\n") != std::string::npos);
}

TEST_CASE("bounded polarization search") {
  const auto r = cli::run("catalog torus2_square | " + cli::tool() + " certify-nonalgebraic - --height 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("polarization found", 0) == 0);
  const auto g = cli::run("catalog torus2_generic | " + cli::tool() + " certify-nonalgebraic - --height 2");
  CHECK(g.exit_code == 0);
  CHECK(g.out == "none up to height 2 (inconclusive)\n");
}
