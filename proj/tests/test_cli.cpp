#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "forge/ising_graph.hpp"

using namespace forge;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
};

fs::path work_dir() {
  const fs::path d = fs::temp_directory_path() / "forge_cli_tests";
  fs::create_directories(d);
  return d;
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("FORGE_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "FORGE_CLI must point at the ising-forge binary");
  const fs::path capture = work_dir() / "last_output.txt";
  const std::string cmd = std::string(bin) + " " + args + " > '" + capture.string() + "' 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_triangle_model(const fs::path& p) {
  std::ofstream out(p);
  out << "site a spin\nsite b spin\nsite c spin\n"
      << "term { a b } 0.3\nterm { b c } 0.3\nterm { a c } 0.3\n";
}

}  // namespace

TEST_CASE("compile of a generated lattice verifies and exits zero") {
  const RunResult r = run_cli("compile --gen triangular:1x1:0.3");
  CHECK(r.code == 0);
  CHECK(r.out.find("compiled:") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("compile writes a deterministic artifact") {
  const fs::path a = work_dir() / "tri_a.graph";
  const fs::path b = work_dir() / "tri_b.graph";
  CHECK(run_cli("compile --gen triangular:1x1:0.3 -o '" + a.string() + "'").code == 0);
  CHECK(run_cli("compile --gen triangular:1x1:0.3 -o '" + b.string() + "'").code == 0);
  const std::string ta = slurp(a);
  CHECK(!ta.empty());
  CHECK(ta == slurp(b));
  CHECK(ta.rfind("isinggraph", 0) == 0);
  CHECK(slurp(fs::path(a.string() + ".prov")).find("v0") != std::string::npos);
}

TEST_CASE("verify accepts a model file against its compiled artifact") {
  const fs::path model = work_dir() / "triangle.model";
  const fs::path artifact = work_dir() / "triangle.graph";
  write_triangle_model(model);
  REQUIRE(run_cli("compile '" + model.string() + "' -o '" + artifact.string() + "'").code == 0);

  const RunResult ok = run_cli("verify '" + model.string() + "' '" + artifact.string() + "'");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  // Nudging one local field by a quarter turn must break the equivalence.
  IsingGraph g = parse_ising(slurp(artifact));
  g.vertices[0].field = canonical(g.vertices[0].field + ComplexField::quarter(1));
  const fs::path corrupted = work_dir() / "triangle_corrupt.graph";
  std::ofstream(corrupted) << serialize_ising(g);
  const RunResult bad = run_cli("verify '" + model.string() + "' '" + corrupted.string() + "'");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify without an artifact compiles the model itself") {
  const RunResult r = run_cli("verify --gen square:1x1:0.25");
  CHECK(r.code == 0);
  CHECK(r.out.find("Z(model)") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("planarize produces a grid artifact that verifies against the model") {
  const fs::path grid = work_dir() / "triangle.grid";
  const RunResult r = run_cli("planarize --gen triangular:1x1:0.3 -o '" + grid.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.find("grid ") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(slurp(grid).rfind("gridising", 0) == 0);

  const RunResult v = run_cli("verify --gen triangular:1x1:0.3 '" + grid.string() + "'");
  CHECK(v.code == 0);
  CHECK(v.out.find("PASS") != std::string::npos);
}

TEST_CASE("dual decimates a square patch and renders the duality probe") {
  const RunResult r = run_cli("dual --gen square:1x2:0.5");
  CHECK(r.code == 0);
  CHECK(r.out.find("square duality probe: 2x3 sites") != std::string::npos);
  CHECK(r.out.find("0.3859684164526") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("pipeline runs every stage and verifies end to end") {
  const RunResult r = run_cli("pipeline --gen triangular:1x1:0.3");
  CHECK(r.code == 0);
  CHECK(r.out.find("stage encode") != std::string::npos);
  CHECK(r.out.find("stage compile") != std::string::npos);
  CHECK(r.out.find("stage embed") != std::string::npos);
  CHECK(r.out.find("end-to-end verified") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("exit codes: parse, semantic, and cap failures are distinct") {
  SUBCASE("missing input file") {
    CHECK(run_cli("compile '" + (work_dir() / "no_such.model").string() + "'").code == 2);
  }
  SUBCASE("no input at all") { CHECK(run_cli("compile").code == 2); }
  SUBCASE("malformed model text") {
    const fs::path bad = work_dir() / "bad.model";
    std::ofstream(bad) << "site a spin\nterm { a } 0.5 0.5\n";
    CHECK(run_cli("compile '" + bad.string() + "'").code == 2);
  }
  SUBCASE("unknown flag") { CHECK(run_cli("compile --bogus 1").code == 2); }
  SUBCASE("unknown lattice kind") {
    CHECK(run_cli("compile --gen kagome:2x2:0.5").code == 3);
  }
  SUBCASE("enumeration cap") {
    const RunResult r = run_cli("verify --gen square:4x5:0.3 --cap 28");
    CHECK(r.code == 4);
    CHECK(r.out.find("enumeration cap exceeded") != std::string::npos);
  }
  SUBCASE("help exits zero") {
    const RunResult r = run_cli("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("compile") != std::string::npos);
  }
}
