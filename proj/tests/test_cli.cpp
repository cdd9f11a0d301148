#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = twistvol::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "twistvol_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("jones command") {
  auto r = run({"jones", "--p", "2", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("abs = 7\n") != std::string::npos);
  auto one = run({"jones", "--p", "2", "--n", "1"});
  CHECK(one.out.find("value = 1 + 0i") != std::string::npos);
  CHECK(one.out.find("v = 0\n") != std::string::npos);
  auto csv = run({"jones", "--p", "3", "--n", "2", "--format", "csv"});
  CHECK(csv.out.rfind("p,N,re,im,abs,log_abs,arg,v\n", 0) == 0);
  CHECK(csv.out.find(",11,") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  auto bad_p = run({"jones", "--p", "0", "--n", "5"});
  CHECK(bad_p.code == 2);
  CHECK(bad_p.err.find("p must lie in") != std::string::npos);
  CHECK(run({"volume", "--p", "1"}).code == 2);
  CHECK(run({"jones", "--p", "2", "--n", "5", "--bogus", "1"}).code == 2);
  CHECK(run({"jones", "--p", "2"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"jones", "volume"}).code == 2);
  CHECK(run({"lemmas", "--suite", "nope"}).code == 2);
  CHECK(run({"verify", "--config", scratch("missing.cfg").string()}).code == 2);
  CHECK(run({"jones", "--p", "2", "--n", "5", "--format", "xml"}).code == 2);
}

TEST_CASE("budget exit 3") {
  CHECK(run({"jones", "--p", "2", "--n", "200", "--budget", "1000"}).code == 3);
  auto s = run({"sweep", "--p", "2", "--n-values", "3,200", "--budget", "1000", "--format", "csv"});
  CHECK(s.code == 3);
  CHECK(s.out.find("200,nan,nan") != std::string::npos);
}

TEST_CASE("volume command") {
  auto a = run({"volume", "--p", "2"});
  auto b = run({"volume", "--p", "-2"});
  CHECK(a.code == 0);
  auto vol = [](const std::string& s) { return s.substr(s.find("volume = ")); };
  CHECK(vol(a.out) == vol(b.out));
}

TEST_CASE("lemmas command") {
  auto r = run({"lemmas", "--suite", "dilog"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Lemma 100") != std::string::npos);
  CHECK(r.out.find("Lemma 98") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
}

TEST_CASE("verify with config file and overrides") {
  auto cfg = scratch("small.cfg");
  auto prefix = scratch("small_report");
  {
    std::ofstream f(cfg);
    f << "# small run\np = 2\nn-values = 10, 20, 30, 40\ngrid-n-values = 10,20\ngrid-reference-n = 20\n"
      << "seed = 99\ntol.gap = 5\ntol.grid = 5\ntol.asymptotic = 2\n";
  }
  auto r = run({"verify", "--config", cfg.string(), "--seed", "7", "--output", prefix.string()});
  CHECK((r.code == 0 || r.code == 1));
  auto json = slurp(prefix.string() + ".json");
  CHECK(json.find("\"seed\": 7") != std::string::npos);
  CHECK(json.find("\"gap\": 5") != std::string::npos);
  auto csv = slurp(prefix.string() + ".csv");
  CHECK(csv.rfind("N,v_N,lower_proxy,upper_proxy\n", 0) == 0);

  {
    std::ofstream f(cfg);
    f << "p = 2\nunknown-key = 3\n";
  }
  CHECK(run({"verify", "--config", cfg.string()}).code == 2);
}

TEST_CASE("verify with zero tolerances exits 1 and still writes the report") {
  auto prefix = scratch("zero_report");
  fs::remove(prefix.string() + ".json");
  auto r = run({"verify", "--n-values", "10,20,30,40", "--grid-n-values", "10,20", "--grid-reference-n", "20",
                "--tol", "algebraic=0", "--tol", "residual=0", "--output", prefix.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("fail") != std::string::npos);
  CHECK(fs::exists(prefix.string() + ".json"));
  CHECK(run({"verify", "--tol", "nonsense=1", "--n-values", "10"}).code == 2);
}
