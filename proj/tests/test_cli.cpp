#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "exlift/cli.hpp"

using exlift::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "exlift");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = exlift::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Exit status of the real binary in a fresh process.
int spawn(const std::string& args) {
  const int status = std::system((std::string(EXLIFT_BIN) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / ("exlift_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("exit codes") {
  using exlift::ErrorCode;
  using namespace exlift::cli;
  CHECK(exit_code(ErrorCode::ParseError) == kParse);
  CHECK(exit_code(ErrorCode::InvalidSpec) == kParse);
  CHECK(exit_code(ErrorCode::NotFredholm) == kNotFredholm);
  CHECK(exit_code(ErrorCode::HypothesisFailed) == kHypothesis);
  CHECK(exit_code(ErrorCode::GuardExceeded) == kGuard);
  CHECK(exit_code(ErrorCode::VerificationFailed) == kVerification);
  CHECK(exit_code(ErrorCode::SearchExhausted) == kInternal);
}

TEST_CASE("check reports") {
  auto dir = scratch();
  auto z4 = write(dir / "z4.json", R"({"type":"zmod","n":4,"ideal":{"generators":[2]}})");
  auto r = run({"check", "--spec", z4, "--format", "machine"});
  REQUIRE(r.code == 0);
  auto rep = json::parse(r.out);
  CHECK(rep["exchange_ideal"] == true);
  CHECK(rep["exchange_ring"] == true);
  CHECK(rep["v_ideal_trivial"] == true);
  CHECK(rep["checks"]["separative"]["holds"] == true);
  CHECK(rep["truncation"] == 2);

  // a + a = a + b = b + b = s with s absorbing.
  auto mon = write(dir / "m.json", R"({"type":"monoid","size":4,"zero":0,"labels":["0","a","b","s"],
    "table":[0,1,2,3, 1,3,3,3, 2,3,3,3, 3,3,3,3]})");
  auto m = run({"check", "--spec", mon, "--format", "machine"});
  REQUIRE(m.code == 0);
  auto mr = json::parse(m.out);
  CHECK(mr["checks"]["separative"]["holds"] == false);
  CHECK(mr["checks"]["separative"]["witness"] == json::array({"a", "b"}));
  auto human = run({"check", "--spec", mon});
  CHECK(human.out.find("witness: [\"a\",\"b\"]") != std::string::npos);

  auto bad = write(dir / "bad.json", R"({"type":"zmod",)");
  auto b = run({"check", "--spec", bad});
  CHECK(b.code == exlift::cli::kParse);
  CHECK(b.err.find("line") != std::string::npos);
  CHECK(run({"check", "--spec", write(dir / "u.json", R"({"type":"zmod","n":4,"extra":1})")}).code ==
        exlift::cli::kParse);
  CHECK(run({"bogus"}).code == exlift::cli::kUsage);
}

TEST_CASE("reports are deterministic") {
  auto dir = scratch();
  auto t = write(dir / "t.json",
                 R"({"type":"triangular","base":{"type":"zmod","n":2},"k":2,"ideal":{"generators":[[[0,1],[0,0]]]}})");
  for (const char* fmt : {"human", "machine"}) {
    auto a = run({"check", "--spec", t, "--format", fmt});
    auto b = run({"check", "--spec", t, "--format", fmt});
    CHECK(a.out == b.out);
    auto la = run({"lift", "--spec", t, "--element", "[[1,1],[0,1]]", "--format", fmt});
    auto lb = run({"lift", "--spec", t, "--element", "[[1,1],[0,1]]", "--format", fmt});
    CHECK(la.code == 0);
    CHECK(la.out == lb.out);
  }
}

TEST_CASE("lift, verify and error exits") {
  auto dir = scratch();
  auto z4 = write(dir / "z4.json", R"({"type":"zmod","n":4,"ideal":{"generators":[2]}})");
  const std::string cert = (dir / "cert.json").string();
  auto l = run({"lift", "--spec", z4, "--element", "3", "--out", cert, "--format", "machine"});
  REQUIRE(l.code == 0);
  auto rep = json::parse(l.out);
  CHECK(rep["y"] == 3);
  CHECK(rep["verified"] == true);
  CHECK(spawn("verify " + cert) == 0);

  json c;
  std::ifstream(cert) >> c;
  c["body"]["y"] = 1;
  auto mutated = write(dir / "mut.json", c.dump());
  CHECK(spawn("verify " + mutated) == exlift::cli::kVerification);
  auto v = run({"verify", mutated, "--format", "machine"});
  CHECK(json::parse(v.out)["failed_contract"] == "lift.y");

  CHECK(run({"index", "--spec", z4, "--element", "2"}).code == exlift::cli::kNotFredholm);
  CHECK(spawn("index --spec " + z4 + " --element 2") == exlift::cli::kNotFredholm);
  auto ix = run({"index", "--spec", z4, "--element", "3", "--format", "machine"});
  REQUIRE(ix.code == 0);
  CHECK(json::parse(ix.out)["zero"]["relaxed"] == true);
  CHECK(run({"lift", "--spec", z4, "--element", "7"}).code == exlift::cli::kParse);
  CHECK(run({"lift", "--spec", z4, "--element", "3", "--ideal", "[1]", "--m4"}).code == 0);
}

TEST_CASE("guard flag and environment") {
  auto dir = scratch();
  auto z16 = write(dir / "z16.json", R"({"type":"zmod","n":16,"ideal":{"generators":[4]}})");
  CHECK(spawn("check --spec " + z16 + " --guard 8") == exlift::cli::kGuard);
  CHECK(std::system(("EXLIFT_GUARD=8 " + std::string(EXLIFT_BIN) + " check --spec " + z16 + " > /dev/null 2>&1").c_str()) != 0);
  CHECK(spawn("check --spec " + z16) == 0);
}

TEST_CASE("corpus certificates verify in fresh processes") {
  auto dir = scratch() / "corpus";
  fs::remove_all(dir);
  auto r = run({"corpus", "--out", dir.string(), "--format", "machine"});
  REQUIRE(r.code == 0);
  auto rep = json::parse(r.out);
  CHECK(rep["all_ok"] == true);
  std::size_t n = 0;
  for (const auto& e : rep["entries"])
    for (const auto& name : e["certificates"]) {
      CHECK(spawn("verify " + (dir / name.get<std::string>()).string()) == 0);
      ++n;
    }
  CHECK(n > 100);
  CHECK(run({"corpus", "--jobs", "1", "--format", "machine"}).out == run({"corpus", "--format", "machine"}).out);
}
