#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spectra/app/cli.hpp"

using spectra::cli::run_command;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_command(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("spectra_forge_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int line_count(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("spectrum: scaled-first example") {
  const auto r = run({"spectrum", "--kind", "scaled-first", "--eps1", "-1", "--nu1", "0",
                      "--q1", "1.41421356", "--format", "json"});
  CHECK(r.status == 0);
  const auto report = json::parse(r.out);
  CHECK(report["pass"] == true);
  const std::vector<double> want = {-0.5, 0.25, 0.75, 1.25, 1.75};
  REQUIRE(report["levels"].size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(report["levels"][i]["value"].get<double>() == doctest::Approx(want[i]).epsilon(1e-8));
    CHECK(report["computed"][i].get<double>() == doctest::Approx(want[i]).epsilon(2e-3));
  }
  CHECK(report["levels"][0]["label"] == "created(eps1)");
  CHECK(report["errors"].size() == want.size());
}

TEST_CASE("spectrum: failed verification exits 1") {
  const auto r = run({"spectrum", "--kind", "first-order", "--eps1", "-1", "--nu1", "0.5",
                      "--tol", "0", "--format", "json"});
  CHECK(r.status == 1);
  CHECK(json::parse(r.out)["pass"] == false);
  CHECK(r.err.rfind("verification_failed", 0) == 0);
  CHECK(line_count(r.err) == 1);
}

TEST_CASE("spectrum: narrow grid is a domain failure") {
  const auto r = run({"spectrum", "--kind", "first-order", "--eps1", "-1", "--grid-l", "3",
                      "--grid-n", "601"});
  CHECK(r.status == 1);
  CHECK(r.err.rfind("grid_too_narrow", 0) == 0);
}

TEST_CASE("generate: singular potential reports the zero") {
  const auto dir = scratch("singular");
  const auto r = run({"generate", "--kind", "first-order", "--eps1", "-0.5", "--nu1", "1.5",
                      "--out", (dir / "v.csv").string()});
  CHECK(r.status == 1);
  // The root of 1 + 1.5 erf(x) is -0.68407.
  CHECK(r.err == "singular_potential at x≈-0.684\n");
  CHECK_FALSE(fs::exists(dir / "v.csv"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"generate", "--kind", "first-order"}).status == 2);
  CHECK(run({"generate", "--kind", "first-order"}).err.rfind("usage_error", 0) == 0);
  CHECK(run({}).status == 2);
  CHECK(run({"generate", "--eps1", "-1"}).status == 2);
  CHECK(run({"generate", "--kind", "fourth-order", "--eps1", "-1"}).status == 2);
  CHECK(run({"generate", "--kind", "scaled-first", "--eps1", "-1"}).status == 2);
  CHECK(run({"generate", "--kind", "second-order", "--eps1", "-1", "--eps2", "-2"}).status == 2);
  CHECK(run({"generate", "--kind", "first-order", "--eps1", "0.6"}).status == 2);
  CHECK(run({"generate", "--kind", "first-order", "--eps1", "-1", "--q1", "abc"}).status == 2);
  CHECK(run({"generate", "--kind", "first-order", "--eps1", "-1", "--format", "xml"}).status == 2);
  CHECK(run({"generate", "--kind", "first-order", "--eps1", "-1", "--grid-n", "2"}).status == 2);
  CHECK(run({"generate", "--kind", "scaled-first", "--eps1", "-1", "--q1", "-2"}).status == 2);
  const auto order = run({"spectrum", "--kind", "second-order", "--eps1", "-0.5", "--nu1", "0",
                          "--eps2", "0.4", "--nu2", "10"});
  CHECK(order.status == 2);
  CHECK(order.err.find("ordering_violation") != std::string::npos);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("generate: CSV schema, spectrum JSON and determinism") {
  const auto dir = scratch("generate");
  const std::vector<std::string> base = {"generate", "--kind", "scaled-second", "--eps1", "-1",
                                         "--nu1", "0", "--q1", "1.41421356", "--eps2", "-1.5",
                                         "--nu2", "1.1", "--grid-l", "8", "--grid-n", "801"};
  auto a = base;
  a.insert(a.end(), {"--out", (dir / "a.csv").string()});
  auto b = base;
  b.insert(b.end(), {"--out", (dir / "b.csv").string()});
  const auto ra = run(a);
  const auto rb = run(b);
  REQUIRE(ra.status == 0);
  REQUIRE(rb.status == 0);
  const std::string csv = slurp(dir / "a.csv");
  CHECK(csv == slurp(dir / "b.csv"));
  CHECK(csv.rfind("x,V\n-8,", 0) == 0);
  CHECK(line_count(csv) == 802);

  const auto spectrum = json::parse(ra.out);
  CHECK(spectrum["kind"] == "scaled-second");
  REQUIRE(spectrum["levels"].size() == 5);
  CHECK(spectrum["levels"][0]["label"] == "created(eps2)");
  CHECK(spectrum["levels"][1]["value"].get<double>() == doctest::Approx(-0.5).epsilon(1e-8));

  // Every row round-trips to 17 significant digits.
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", std::stod(line.substr(comma + 1)));
    CHECK(line.substr(comma + 1) == buf);
  }
}

TEST_CASE("generate: JSON samples") {
  const auto dir = scratch("generate_json");
  const auto r = run({"generate", "--kind", "first-order", "--eps1", "-0.5", "--grid-n", "11",
                      "--format", "json", "--out", (dir / "v.json").string()});
  REQUIRE(r.status == 0);
  const auto samples = json::parse(slurp(dir / "v.json"));
  REQUIRE(samples["x"].size() == 11);
  for (std::size_t i = 0; i < 11; ++i) {
    const double x = samples["x"][i];
    CHECK(samples["V"][i].get<double>() == doctest::Approx(0.5 * x * x - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("generate: grids wider than the default certification interval") {
  const auto dir = scratch("wide");
  const auto r = run({"generate", "--kind", "first-order", "--eps1", "-1", "--nu1", "0.3",
                      "--grid-l", "14", "--grid-n", "281", "--out", (dir / "v.csv").string()});
  CHECK(r.status == 0);
}

TEST_CASE("lock expressions") {
  using spectra::cli::parse_lock;
  const auto a = parse_lock("eps1=-q1^2/2");
  REQUIRE(a);
  CHECK(a->target == "eps1");
  CHECK(a->coefficient == -0.5);
  CHECK(parse_lock("eps2 = -0.5*q1^2")->coefficient == -0.5);
  CHECK(parse_lock("eps1=q1^2/4")->coefficient == 0.25);
  CHECK(parse_lock("eps1=q1^2")->coefficient == 1.0);
  CHECK(parse_lock("eps2=+3*q1^2/4")->coefficient == 0.75);
  CHECK_FALSE(parse_lock("eps1=-q2^2/2"));
  CHECK_FALSE(parse_lock("nu1=q1^2"));
  CHECK_FALSE(parse_lock("eps1=q1^3"));
  CHECK_FALSE(parse_lock("eps1=q1^2/0"));
  CHECK_FALSE(parse_lock("eps1=sin(q1)"));
}

TEST_CASE("sweep: files, manifest and frame independence") {
  const auto dir = scratch("sweep");
  const std::vector<std::string> common = {"sweep", "--kind", "scaled-first", "--nu1", "0",
                                           "--param", "q1", "--lock", "eps1=-q1^2/2",
                                           "--grid-l", "8", "--grid-n", "401", "--steps", "3"};
  auto forward = common;
  forward.insert(forward.end(), {"--from", "0.8", "--to", "1.2", "--out", (dir / "f").string()});
  auto backward = common;
  backward.insert(backward.end(), {"--from", "1.2", "--to", "0.8", "--out", (dir / "b").string()});
  REQUIRE(run(forward).status == 0);
  REQUIRE(run(backward).status == 0);

  const auto manifest = json::parse(slurp(dir / "f" / "manifest.json"));
  CHECK(manifest["param"] == "q1");
  CHECK(manifest["locks"][0] == "eps1=-q1^2/2");
  CHECK(manifest["fixed"]["nu1"] == 0.0);
  CHECK_FALSE(manifest["fixed"].contains("eps1"));
  REQUIRE(manifest["files"].size() == 3);
  CHECK(manifest["files"][0] == "q1=0.80000000000000004.csv");
  for (const auto& frame : manifest["frames"]) {
    CHECK(frame["status"] == "ok");
    // Ground level pinned at -1/2 by the lock.
    CHECK(frame["levels"][0]["value"].get<double>() == doctest::Approx(-0.5).epsilon(1e-12));
    const std::string file = frame["file"];
    CHECK(slurp(dir / "f" / file) == slurp(dir / "b" / file));
  }
}

TEST_CASE("sweep: presets") {
  const auto dir = scratch("preset");
  const auto r = run({"sweep", "--preset", "fixed-two-lowest-scaling", "--grid-l", "8",
                      "--grid-n", "401", "--steps", "3", "--out", dir.string()});
  CHECK(r.status == 0);
  // The q1 = sqrt 2 end of the range puts eps1 at 1/2, which is excluded.
  CHECK(r.err.find("warning: q1=1.4142135623730951 skipped") != std::string::npos);
  const auto manifest = json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["preset"] == "fixed-two-lowest-scaling");
  CHECK(manifest["frames"][0]["status"] == "ok");
  CHECK(manifest["frames"][2]["status"] == "skipped");
  CHECK(manifest["files"][2].is_null());
  CHECK(manifest["warnings"].size() == 1);

  for (const char* name : {"ground-level-scan", "first-excited-scan", "fixed-ground-scaling",
                           "fixed-first-excited-scaling"}) {
    const auto sub = dir / name;
    INFO(name);
    CHECK(run({"sweep", "--preset", name, "--steps", "2", "--grid-n", "201", "--out",
               sub.string()})
              .status == 0);
  }
  CHECK(run({"sweep", "--preset", "no-such-figure"}).status == 2);
}

TEST_CASE("sweep: eps crossing zero in a scaled sweep warns") {
  const auto dir = scratch("crossing");
  const auto r = run({"sweep", "--kind", "scaled-first", "--nu1", "0", "--q1", "1.2",
                      "--param", "eps1", "--from", "-0.3", "--to", "0.3", "--steps", "3",
                      "--grid-n", "201", "--out", dir.string()});
  CHECK(r.status == 0);
  CHECK(r.err.find("eps1 changes sign") != std::string::npos);
}

TEST_CASE("sweep: singular frames are domain failures") {
  const auto dir = scratch("sweep_singular");
  const auto r = run({"sweep", "--kind", "first-order", "--nu1", "1.5", "--param", "eps1",
                      "--from", "-1", "--to", "-0.5", "--steps", "2", "--grid-n", "201",
                      "--out", dir.string()});
  CHECK(r.status == 1);
  CHECK(r.err.rfind("singular_potential at x", 0) == 0);
  const auto manifest = json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["frames"][0]["status"] == "error");
}

TEST_CASE("sweep: usage errors") {
  CHECK(run({"sweep", "--kind", "first-order", "--param", "eps1", "--from", "-1"}).status == 2);
  CHECK(run({"sweep", "--kind", "first-order", "--param", "grid", "--from", "-1", "--to", "0",
             "--steps", "2"}).status == 2);
  CHECK(run({"sweep", "--kind", "first-order", "--eps1", "-1", "--param", "eps1", "--from",
             "-1", "--to", "0", "--steps", "2"}).status == 2);
  CHECK(run({"sweep", "--kind", "first-order", "--param", "eps1", "--from", "-1", "--to", "0",
             "--steps", "2", "--lock", "eps1=-q1^2/2"}).status == 2);
  CHECK(run({"sweep", "--kind", "scaled-first", "--param", "q1", "--from", "1", "--to", "2",
             "--steps", "2", "--lock", "eps1=cos(q1)"}).status == 2);
  CHECK(run({"sweep", "--kind", "first-order", "--param", "eps1", "--from", "-1", "--to", "-1",
             "--steps", "2"}).status == 2);
}
