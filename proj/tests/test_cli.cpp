#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "fixture.hpp"
#include "oracles.hpp"
#include "qspectral/cli.hpp"
#include "qspectral/io.hpp"

using namespace qspectral;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("qspectral_cli_" + std::to_string(std::rand()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

HMatrix jordan2() {
  HMatrix j(2);
  j(0, 1) = Quaternion{1.0};
  return j;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("drazin on a Jordan block") {
  TempDir dir;
  io::write_file(dir.file("j.json"), io::qmat_to_json(jordan2()));
  const Outcome r = run({"drazin", dir.file("j.json")});
  REQUIRE(r.code == cli::kExitOk);
  const io::DrazinDocument d = io::qdrz_from_json(io::parse_text(r.out, "out"));
  CHECK(d.result.index == 2);
  CHECK(d.result.inverse == HMatrix::zero(2));
  CHECK(d.tolerances.at("residual") == 1e-7);
  for (const auto& [k, v] : d.residuals) CHECK(v <= 1e-7);
}

TEST_CASE("spectrum of diag(i, j)") {
  TempDir dir;
  io::write_file(dir.file("d.json"), io::qmat_to_json(HMatrix::diagonal({kUnitI, kUnitJ})));
  const Outcome r = run({"spectrum", dir.file("d.json")});
  REQUIRE(r.code == 0);
  const io::json doc = io::json::parse(r.out);
  REQUIRE(doc.at("spheres").size() == 1);
  CHECK(std::abs(doc["spheres"][0]["u"].get<double>()) <= 1e-12);
  CHECK(doc["spheres"][0]["v"].get<double>() == doctest::Approx(1.0));
  CHECK(doc["spheres"][0]["mult"] == 2);
  CHECK(doc.at("tolerances").contains("sphere"));
}

TEST_CASE("verify all routes on the seed-42 fixture") {
  TempDir dir;
  io::write_file(dir.file("f.json"), io::qmat_to_json(fixture::seed42().a));
  const Outcome r = run({"verify", "--routes", "all", dir.file("f.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("index 2") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("funcalc") != std::string::npos);
  CHECK(r.out.find("all residuals within tolerance") != std::string::npos);

  const Outcome tight = run({"verify", "--tol", "1e-300", dir.file("f.json")});
  CHECK(tight.code == cli::kExitMath);
  CHECK(tight.out.find("FAIL") != std::string::npos);
}

TEST_CASE("group inverse of a Jordan block fails") {
  TempDir dir;
  io::write_file(dir.file("j.json"), io::qmat_to_json(jordan2()));
  const Outcome r = run({"group", dir.file("j.json")});
  CHECK(r.code == cli::kExitMath);
  CHECK(r.err.find("index > 1") != std::string::npos);
}

TEST_CASE("matrix verbs emit chainable qmat-1") {
  TempDir dir;
  const GeneratedMatrix g = fixture::seed42();
  io::write_file(dir.file("a.json"), io::qmat_to_json(g.a));
  const Outcome mp = run({"-o", dir.file("mp.json"), "ginverse", dir.file("a.json")});
  REQUIRE(mp.code == 0);
  CHECK(mp.out.empty());
  const HMatrix b = io::read_qmat_file(dir.file("mp.json"));
  CHECK(relative_deviation(oracle::pinv(g.a), b) <= 1e-9);
  // the output is itself a valid input
  CHECK(run({"ginverse", dir.file("mp.json")}).code == 0);

  const Outcome f = run({"funcalc", "--fn", "poly:0,0,1", dir.file("a.json")});
  REQUIRE(f.code == 0);
  CHECK(relative_deviation(g.a * g.a, io::qmat_from_json(io::json::parse(f.out))) <= 1e-8);

  const Outcome sel = run({"funcalc", "--fn", "drazin-selector", dir.file("a.json")});
  REQUIRE(sel.code == 0);
  CHECK(relative_deviation(g.drazin, io::qmat_from_json(io::json::parse(sel.out))) <= 1e-8);

  const Outcome rz = run({"riesz", "--sphere", "0,0", dir.file("a.json")});
  REQUIRE(rz.code == 0);
  CHECK(relative_deviation(HMatrix::identity(5) - g.core_projection, io::qmat_from_json(io::json::parse(rz.out))) <= 1e-8);

  const Outcome res = run({"resolvent", "--s", "3,1,0,0", dir.file("a.json")});
  CHECK(res.code == 0);
  const Outcome radius = run({"radius", "--power", "64", dir.file("a.json")});
  REQUIRE(radius.code == 0);
  CHECK(io::json::parse(radius.out).at("format") == "qradius-1");
}

TEST_CASE("exit codes for bad input") {
  TempDir dir;
  CHECK(run({"spectrum", dir.file("missing.json")}).code == cli::kExitInput);
  CHECK(run({"frobnicate", "x"}).code == cli::kExitInput);
  CHECK(run({}).code == cli::kExitInput);
  io::write_file(dir.file("bad.json"), io::json{{"format", "qmat-1"}, {"n", 2}});
  const Outcome bad = run({"spectrum", dir.file("bad.json")});
  CHECK(bad.code == cli::kExitInput);
  CHECK(bad.err.find("entries") != std::string::npos);
  io::write_file(dir.file("a.json"), io::qmat_to_json(jordan2()));
  CHECK(run({"drazin", "--route", "svd", dir.file("a.json")}).code == cli::kExitInput);
  CHECK(run({"resolvent", "--s", "1,2", dir.file("a.json")}).code == cli::kExitInput);
  CHECK(run({"resolvent", "--s", "0,0,0,0", dir.file("a.json")}).code == cli::kExitMath);
  CHECK(run({"resolvent", "--series", "--s", "0.5,0,0,0", dir.file("a.json")}).code == cli::kExitOk);
}

TEST_CASE("environment tolerance override") {
  TempDir dir;
  io::write_file(dir.file("f.json"), io::qmat_to_json(fixture::seed42().a));
  ::setenv("QSPECTRAL_TOL", "1e-300", 1);
  const Outcome tight = run({"verify", dir.file("f.json")});
  ::setenv("QSPECTRAL_TOL", "-1", 1);
  const Outcome bad = run({"verify", dir.file("f.json")});
  ::unsetenv("QSPECTRAL_TOL");
  CHECK(tight.code == cli::kExitMath);
  CHECK(bad.code == cli::kExitInput);
  CHECK(run({"verify", dir.file("f.json")}).code == cli::kExitOk);
}

TEST_CASE("suite configs") {
  TempDir dir;
  io::write_file(dir.file("empty.json"), io::json::object());
  const Outcome e = run({"suite", dir.file("empty.json")});
  CHECK(e.code == 0);
  CHECK(io::json::parse(e.out).at("properties").empty());

  io::write_file(dir.file("tight.json"), io::json{{"sizes", {2, 3}}, {"count", 3}, {"tolerance", 1e-15}});
  const Outcome t = run({"suite", dir.file("tight.json")});
  CHECK(t.code == cli::kExitMath);
  const io::json doc = io::json::parse(t.out);
  CHECK(doc.at("format") == "qsuite-1");
  int failed = 0;
  for (const auto& p : doc.at("properties")) failed += p.at("pass").get<bool>() ? 0 : 1;
  CHECK(failed > 0);

  io::write_file(dir.file("junk.json"), io::json{{"sizes", {2}}, {"colour", "red"}});
  CHECK(run({"suite", dir.file("junk.json")}).code == cli::kExitInput);
}

TEST_CASE("determinism") {
  TempDir dir;
  io::write_file(dir.file("f.json"), io::qmat_to_json(fixture::seed42().a));
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"drazin", "--route", "funcalc", dir.file("f.json")},
        std::vector<std::string>{"spectrum", dir.file("f.json")},
        std::vector<std::string>{"verify", dir.file("f.json")}}) {
    const Outcome a = run(args);
    const Outcome b = run(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}

TEST_CASE("emitted documents round trip") {
  TempDir dir;
  io::write_file(dir.file("f.json"), io::qmat_to_json(fixture::seed42().a));
  const Outcome d = run({"drazin", dir.file("f.json")});
  REQUIRE(d.code == 0);
  CHECK(io::dump(io::qdrz_to_json(io::qdrz_from_json(io::parse_text(d.out, "out")))) == d.out);
  const Outcome s = run({"spectrum", dir.file("f.json")});
  REQUIRE(s.code == 0);
  CHECK(io::dump(io::qspec_to_json(io::qspec_from_json(io::parse_text(s.out, "out")),
                                   {{"sphere", io::qspec_from_json(io::parse_text(s.out, "out")).tol_sphere}})) == s.out);
}

}
