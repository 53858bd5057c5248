#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fekete/cli.hpp"
#include "fekete/io.hpp"

namespace fs = std::filesystem;
using namespace fekete;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fekete_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string at(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check exit codes") {
  TempDir dir;
  const auto good = dir.file("good.json", R"({"values": [1, 2, 3, 4, 5], "offset": 1})");
  const auto bad = dir.file("bad.json", R"({"values": [1, 1, 3]})");
  CHECK(run({"check", "--seq", good, "--f", "zero", "--domain", "full"}).code == 0);
  const auto r = run({"check", "--seq", bad, "--f", "zero", "--domain", "full"});
  CHECK(r.code == 1);
  const auto report = io::Json::parse(r.out);
  CHECK(report["violations"][0]["n"] == 1);
  CHECK(report["violations"][0]["m"] == 2);
  CHECK(report["violations"][0]["deficit"] == "1");
  CHECK(run({"check", "--seq", bad, "--domain", "threshold:2"}).code == 0);
  CHECK(run({"check", "--seq", bad, "--f", "constant,1"}).code == 0);
}

TEST_CASE("usage and format errors exit with 2") {
  TempDir dir;
  const auto broken = dir.file("broken.json", R"({"values": [1, "x"]})");
  const auto good = dir.file("good.json", R"({"values": [1, 2, 3]})");
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check"}).code == 2);
  CHECK(run({"check", "--seq", broken}).code == 2);
  CHECK(run({"check", "--seq", dir.at("missing.json")}).code == 2);
  CHECK(run({"check", "--seq", good, "--domain", "sideways"}).code == 2);
  CHECK(run({"check", "--seq", good, "--f", "family:nope"}).code == 2);
  CHECK(run({"certify-mu", "--mu", "1", "--N", "1", "--n", "5"}).code == 2);
  CHECK(run({"decompose", "--n", "3", "--k", "2"}).code == 2);
  CHECK(run({"construct", "threshold-gap", "--N", "3", "--anchors", "5,8", "--H", "20", "-o", dir.at("t.json")})
            .code == 2);
}

TEST_CASE("construct output feeds check") {
  TempDir dir;
  const auto convex = dir.at("convex.json");
  REQUIRE(run({"construct", "convex", "--f", "floor_sqrt", "--H", "300", "-o", convex}).code == 0);
  CHECK(run({"check", "--seq", convex, "--f", "floor_sqrt", "--domain", "full"}).code == 0);
  CHECK(run({"check", "--seq", convex, "--domain", "full"}).code == 1);

  const auto slopes = dir.at("slopes.json");
  REQUIRE(run({"construct", "rational-slopes", "--f", "linear,8", "--K", "10", "--Hmax", "3000", "-o", slopes}).code == 0);
  const auto doc = io::Json::parse(slurp(slopes));
  CHECK(doc["enumeration"] == "calkin-wilf-interleaved");
  CHECK(doc["coverage"].size() == 10);
  CHECK(run({"check", "--seq", slopes, "--f", "linear,8", "--domain", "full"}).code == 0);

  const auto gap = dir.at("gap.json");
  REQUIRE(run({"construct", "threshold-gap", "--N", "3", "--anchors", "5,20,100", "--H", "150", "-o", gap}).code == 0);
  CHECK(run({"check", "--seq", gap, "--domain", "threshold:3"}).code == 0);
  CHECK(run({"check", "--seq", gap, "--domain", "full"}).code == 1);

  const auto lin = dir.at("lin.json");
  REQUIRE(run({"construct", "linear-error", "--f", "linear,1", "--L", "1", "--H", "60", "-o", lin}).code == 0);
  CHECK(run({"check", "--seq", lin, "--f", "linear,1"}).code == 0);
}

TEST_CASE("failed constructions exit with 1") {
  TempDir dir;
  const auto r = run({"construct", "rational-slopes", "--f", "zero", "--K", "3", "--Hmax", "50", "-o", dir.at("z.json")});
  CHECK(r.code == 1);
  CHECK(r.err.find("f identically zero") != std::string::npos);
}

TEST_CASE("error terms from files and explicit domains") {
  TempDir dir;
  const auto seq = dir.file("s.csv", "1,1\n2,1\n3,3\n");
  const auto fjson = dir.file("f.json", R"({"values": [0, 0, 1]})");
  const auto fcsv = dir.file("f.csv", "1,0\n2,0\n3,1\n");
  const auto fam = dir.file("fam.json", R"({"family": "constant", "params": {"c": 1}})");
  CHECK(run({"check", "--seq", seq, "--f", fjson}).code == 0);
  CHECK(run({"check", "--seq", seq, "--f", fcsv}).code == 0);
  CHECK(run({"check", "--seq", seq, "--f", fam}).code == 0);
  const auto pairs = dir.file("pairs.csv", "1,1\n");
  CHECK(run({"check", "--seq", seq, "--domain", "explicit:" + pairs}).code == 0);
  const auto both = dir.file("both.json", R"({"pairs": [[1, 1], [2, 1]]})");
  CHECK(run({"check", "--seq", seq, "--domain", "explicit:" + both}).code == 1);
}

TEST_CASE("analysis subcommands") {
  TempDir dir;
  const auto root = dir.file("root.csv", [] {
    std::string s;
    for (int n = 1; n <= 100; ++n) {
      int r = 0;
      while (r * r < n) ++r;
      s += std::to_string(n) + "," + std::to_string(r) + "\n";
    }
    return s;
  }());
  const auto limit = run({"limit", "--seq", root, "--N", "1"});
  REQUIRE(limit.code == 0);
  CHECK(io::Json::parse(limit.out)["min_slope"] == "1/10");

  const auto cert = run({"certify-mu", "--mu", "3/2", "--N", "1", "--n", "5"});
  CHECK(cert.code == 0);
  CHECK(io::Json::parse(cert.out)["k"] == 4);

  const auto chain = run({"decompose", "--n", "10", "--k", "3", "--seq", root});
  REQUIRE(chain.code == 0);
  CHECK(io::Json::parse(chain.out)["chain"] == io::Json::parse("[[3,3,4],[4,6],[10]]"));

  const auto g = run({"gdeficit", "--seq", root, "--f", "zero", "--n", "2", "--m", "3"});
  REQUIRE(g.code == 0);
  CHECK(g.out.find("\"-1\"") != std::string::npos);

  CHECK(run({"q-monotone", "--seq", root, "--N", "1"}).code == 0);
  CHECK(run({"convexity", "--seq", root}).code == 1);

  const auto e = run({"enumerate", "--count", "5"});
  CHECK(io::Json::parse(e.out)["rationals"] == io::Json::parse(R"(["0","1","-1","1/2","-1/2"])"));
  CHECK(io::Json::parse(run({"simplest", "--lo", "0", "--hi", "1", "--forbid", "1/2"}).out)["value"] == "1/3");
  CHECK(run({"split", "--z", "10", "--lo", "3", "--hi", "3", "--mu", "2"}).code == 1);
  CHECK(run({"split", "--z", "7", "--lo", "3", "--hi", "4", "--mu", "2"}).code == 0);
}

TEST_CASE("repeated runs produce identical bytes") {
  TempDir dir;
  const auto a = dir.at("a.json");
  const auto b = dir.at("b.json");
  REQUIRE(run({"construct", "rational-slopes", "--f", "linear,8", "--K", "12", "--Hmax", "3000", "-o", a}).code == 0);
  REQUIRE(run({"construct", "rational-slopes", "--f", "linear,8", "--K", "12", "--Hmax", "3000", "-o", b}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto conv = dir.at("conv.json");
  REQUIRE(run({"construct", "convex", "--f", "linear_over_log", "--H", "400", "-o", conv}).code == 0);
  const auto r1 = run({"check", "--seq", conv, "--f", "floor_sqrt"});
  const auto r2 = run({"check", "--seq", conv, "--f", "floor_sqrt"});
  CHECK(r1.out == r2.out);
}

TEST_CASE("the installed binary reports the same exit codes") {
  TempDir dir;
  const auto bad = dir.file("bad.json", R"({"values": [1, 1, 3]})");
  const auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  const std::string bin = FEKETE_CLI_PATH;
  CHECK(status(bin + " enumerate --count 3") == 0);
  CHECK(status(bin + " check --seq " + bad) == 1);
  CHECK(status(bin + " check") == 2);
}
