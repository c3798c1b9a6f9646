#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path work = fs::temp_directory_path() / "slepian_cli_test";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(work);
  const fs::path p = work / name;
  std::ofstream(p) << text;
  return p;
}

struct result {
  int code = -1;
  std::string output;
};

result run(const std::string& args) {
  fs::create_directories(work);
  const fs::path log = work / "last_output.txt";
  const std::string cmd = std::string("\"") + SLEPIAN_KIT_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = slurp(log);
  return r;
}

const char* small_run = R"([grid]
dim = 1
n = 60
[fourier_mask]
shape = interval
half_width = 0.3*2*pi
[varying]
count = 4
)";

}  // namespace

TEST_CASE("invalid key exits 2 and names the key") {
  const auto cfg = write_config("bad.ini", "[grid]\nn = 20\nwidth = 3\n");
  const auto r = run("assemble --config " + cfg.string() + " --out " + (work / "bad").string());
  CHECK(r.code == 2);
  CHECK(r.output.find("width") != std::string::npos);
}

TEST_CASE("command line errors exit 2") {
  CHECK(run("frobnicate --config x.ini").code == 2);
  CHECK(run("eig").code == 2);
  CHECK(run("eig --config a.ini --seed minus-one").code == 2);
}

TEST_CASE("missing config file names the path") {
  const auto r = run("eig --config /nonexistent/conf.ini");
  CHECK(r.code != 0);
  CHECK(r.output.find("/nonexistent/conf.ini") != std::string::npos);
}

TEST_CASE("flat masks assemble to the identity") {
  const auto cfg = write_config("flat.ini", "[grid]\nn = 16\n[space_mask]\nshape = full\n[fourier_mask]\nshape = full\n");
  const fs::path out = work / "flat";
  fs::remove_all(out);
  const auto r = run("assemble --config " + cfg.string() + " --out " + out.string());
  CHECK(r.code == 0);
  CHECK(fs::exists(out / "kernel.bin"));
  CHECK(r.output.find("identity") != std::string::npos);

  const auto e = run("eig --config " + cfg.string() + " --out " + out.string() + " --no-timestamp");
  CHECK(e.code == 0);
  std::ifstream in(out / "spectrum.csv");
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::stod(line.substr(line.find(',') + 1)) == doctest::Approx(1.0).epsilon(1e-14));
    ++rows;
  }
  CHECK(rows == 16);
}

TEST_CASE("reruns are byte-identical") {
  const auto cfg = write_config("small.ini", small_run);
  const fs::path a = work / "rerun_a", b = work / "rerun_b";
  fs::remove_all(a);
  fs::remove_all(b);
  REQUIRE(run("varying-masks --config " + cfg.string() + " --out " + a.string() + " --no-timestamp --seed 5").code == 0);
  REQUIRE(run("varying-masks --config " + cfg.string() + " --out " + b.string() + " --no-timestamp --seed 5").code == 0);
  CHECK(fs::exists(a / "run_record.json"));
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    if (name == "run_timing.csv") continue;
    CHECK_MESSAGE(slurp(entry.path()) == slurp(b / name), name.string());
    ++compared;
  }
  CHECK(compared >= 10);
}

TEST_CASE("output directory from the environment") {
  const auto cfg = write_config("env.ini", "[oracle]\nsuites = dpss\n");
  const fs::path out = work / "from_env";
  fs::remove_all(out);
  setenv("SLEPIAN_KIT_OUT", out.string().c_str(), 1);
  const auto r = run("oracle-check --config " + cfg.string());
  unsetenv("SLEPIAN_KIT_OUT");
  CHECK(r.code == 0);
  CHECK(fs::exists(out / "oracle_report.csv"));
}

TEST_CASE("exhausted schedule exits 3") {
  const auto cfg = write_config("partial.ini", std::string(small_run) + "steps = 2\n");
  const auto r = run("varying-masks --config " + cfg.string() + " --out " + (work / "partial").string());
  CHECK(r.code == 3);
  CHECK(slurp(work / "partial" / "run_record.json").find("\"complete\": false") != std::string::npos);
}

TEST_CASE("failing oracle exits 4") {
  // Gaussian modes on a grid too coarse to resolve them
  const auto cfg = write_config("oracle_fail.ini", "[oracle]\nsuites = gaussian\ngaussian_orders = 5\ngaussian_n = 24\n");
  const auto r = run("oracle-check --config " + cfg.string() + " --out " + (work / "oracle_fail").string());
  CHECK(r.code == 4);
}

TEST_CASE("dense work above the memory cap is refused") {
  const auto cfg = write_config("cap.ini", "[grid]\ndim = 2\nn = 60\n[space_mask]\nshape = ball\ncenter = 0, 0\nradius = 0.8\n"
                                           "[fourier_mask]\nshape = ball\ncenter = 0, 0\nradius = 1\n[run]\nmemory_cap_mb = 10\n");
  const auto r = run("eig --config " + cfg.string() + " --out " + (work / "cap").string());
  CHECK(r.code != 0);
  CHECK(r.output.find("iterative") != std::string::npos);
}

TEST_CASE("plot re-renders the CSV files") {
  const auto cfg = write_config("plot.ini", small_run);
  const fs::path out = work / "plot";
  fs::remove_all(out);
  REQUIRE(run("eig --config " + cfg.string() + " --out " + out.string()).code == 0);
  for (const auto& entry : fs::directory_iterator(out))
    if (entry.path().extension() == ".svg") fs::remove(entry.path());
  CHECK(run("plot --config " + cfg.string() + " --out " + out.string()).code == 0);
  CHECK(fs::exists(out / "spectrum.svg"));
  CHECK(fs::exists(out / "eigvec_01.svg"));
}
