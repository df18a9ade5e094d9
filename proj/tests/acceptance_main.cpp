// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spectra/app/acceptance.hpp"
#include "spectra/app/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

spectra::acceptance::CriterionResult cli_criterion() {
  spectra::acceptance::CriterionResult result{
      9, "CLI verify exits 0; repeated generate runs are byte-identical", false, ""};
  std::ostringstream out;
  std::ostringstream err;
  const int verify = spectra::cli::run_command({"verify"}, out, err);

  const fs::path dir = fs::temp_directory_path() / "spectra_forge_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::string> files;
  int generate_status = 0;
  for (const char* name : {"first.csv", "second.csv"}) {
    const std::string path = (dir / name).string();
    std::ostringstream sink;
    generate_status |= spectra::cli::run_command(
        {"generate", "--kind", "scaled-second", "--eps1", "0.36", "--nu1", "0", "--q1", "1.2",
         "--eps2", "-0.72", "--nu2", "10000", "--out", path},
        sink, err);
    files.push_back(slurp(path));
  }
  const bool identical = generate_status == 0 && !files[0].empty() && files[0] == files[1];
  result.pass = verify == 0 && identical;
  result.detail = "verify exit " + std::to_string(verify) + "; generate CSVs " +
                  (identical ? "identical" : "differ") + " (" +
                  std::to_string(files[0].size()) + " bytes)";
  fs::remove_all(dir);
  return result;
}

}  // namespace

int main() {
  auto results = spectra::acceptance::run_library_criteria();
  results.push_back(cli_criterion());
  bool all = true;
  for (const auto& r : results) {
    std::printf("criterion %d: %s  %s  [%s]\n", r.id, r.pass ? "PASS" : "FAIL",
                r.title.c_str(), r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
