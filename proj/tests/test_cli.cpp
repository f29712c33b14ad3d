#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = CPA_CORPUS_DIR;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" CPAUT_BINARY "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string path(const std::string& relative) { return "'" + (kCorpus / relative).string() + "'"; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cpaut_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("analyze reports Out_c") {
  const Run r = run("analyze " + path("presentations/dihedral8.pres"));
  CHECK(r.code == 0);
  CHECK(r.out.find("|Out_c(G)|            1") != std::string::npos);
  const Run m = run("analyze --report machine " + path("tables/order32/sg32_44.tbl"));
  CHECK(m.code == 0);
  CHECK(m.out.find("order: 32") != std::string::npos);
}

TEST_CASE("verify-theorem on order 32") {
  const Run r = run("verify-theorem --jobs 4 " + path("tables/order32"));
  CHECK(r.code == 0);
  CHECK(r.out.find("summary: groups=51 flagged=2 disagreements=0 names=sg32_43,sg32_44") !=
        std::string::npos);
  const Run trio = run("verify-theorem " + path("presentations/maxclass32"));
  CHECK(trio.code == 0);
  CHECK(trio.out.find("flagged=0") != std::string::npos);
}

TEST_CASE("oracle passes and detects an injected fault") {
  CHECK(run("oracle " + path("tables/order8") + " " + path("tables/order16")).code == 0);
  CHECK(run("oracle --inject-fault " + path("presentations/dihedral8.pres")).code == 2);
}

TEST_CASE("exit codes for bad input and overflow") {
  const fs::path dir = scratch("errors");
  std::ofstream(dir / "bad.tbl") << "2\n0 1\n1 1\n";
  CHECK(run("analyze '" + (dir / "bad.tbl").string() + "'").code == 1);
  CHECK(run("analyze '" + (dir / "missing.tbl").string() + "'").code == 1);
  CHECK(run("analyze --max-cosets 10 " + path("presentations/cyclic64.pres")).code == 3);
  CHECK(run("verify-theorem " + path("tables/order16")).code == 1);
}

TEST_CASE("cached and uncached reports are identical") {
  const fs::path cache = scratch("cache");
  const std::string file = path("tables/order32/sg32_43.tbl");
  const Run plain = run("analyze " + file);
  const Run cold = run("analyze --cache '" + cache.string() + "' " + file);
  const Run warm = run("analyze " + file, "CPAUT_CACHE_DIR='" + cache.string() + "'");
  CHECK(plain.code == 0);
  CHECK(cold.out == plain.out);
  CHECK(warm.out == plain.out);
  CHECK(std::distance(fs::directory_iterator(cache), fs::directory_iterator{}) == 1);
}

TEST_CASE("scalar kernels can be forced") {
  CHECK(run("kernels", "CPA_KERNELS=scalar").out == "scalar\n");
}
