#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "ihlab/cli.hpp"
#include "ihlab/io.hpp"

using namespace ihlab;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ihlab_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_config(RunConfig cfg) {
  if (cfg.timestamp.empty()) cfg.timestamp = "fixed";
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig command(const std::string& name, const std::string& model = "") {
  RunConfig c;
  c.command = name;
  c.model_path = model;
  return c;
}

const std::string& toy5_model(const TempDir& dir) {
  static std::string path;
  if (path.empty() || !fs::exists(path)) {
    path = dir.file("toy5.json");
    auto c = command("build-sh");
    c.lattice = "toy5";
    c.n = 1;
    c.output_path = path;
    REQUIRE(run_config(c).code == kExitOk);
  }
  return path;
}

int shell(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("build-sh writes a model file") {
  TempDir dir;
  auto c = command("build-sh");
  c.lattice = "toy5";
  c.n = 2;
  c.output_path = dir.file("m.json");
  REQUIRE(run_config(c).code == kExitOk);
  auto j = json::parse(read_file(c.output_path));
  CHECK(j["full_algebra"]["dims"] == json::array({1, 5, 15, 5, 1}));
  CHECK(j["construction"] == "sh");
  auto mf = load_model(c.output_path);
  CHECK(mf.builder_output);
  CHECK(mf.model.dims == std::vector<std::size_t>{1, 5, 15, 5, 1});

  c.lattice = "no-such-lattice";
  CHECK(run_config(c).code == kExitInputError);
}

TEST_CASE("check-all on toy5 passes") {
  TempDir dir;
  auto c = command("check-all", toy5_model(dir));
  c.output_path = dir.file("report.json");
  auto o = run_config(c);
  CHECK(o.code == kExitOk);
  auto j = json::parse(read_file(c.output_path));
  CHECK(j["perverse_table"] == json::parse("[[1,0,1],[0,3,0],[1,0,1]]"));
  CHECK(j["hodge_table"] == j["perverse_table"]);
  std::map<std::string, std::string> status;
  for (const auto& e : j["checks"]) status[e["name"]] = e["status"];
  for (const char* name : {"symmetry", "border", "invariance", "lefschetz_pair_i", "lefschetz_pair_ii", "p0_claim_span",
                           "perverse_equals_hodge", "lefschetz_criterion", "fujiki"})
    CHECK_MESSAGE(status[name] == "pass", name);
  CHECK(j["meta"]["seed"] == 42);
  CHECK(j["meta"]["mode"] == "exact");
  CHECK(j["meta"]["model_digest"].get<std::string>().rfind("sha256:", 0) == 0);
  CHECK(fs::exists(dir.file("report.txt")));
}

TEST_CASE("reports are byte-identical across runs") {
  TempDir dir;
  for (const char* cmd : {"check-all", "llv", "validate"}) {
    auto c = command(cmd, toy5_model(dir));
    auto a = run_config(c), b = run_config(c);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }
  auto c = command("perverse", toy5_model(dir));
  c.class_spec = "sample:2";
  auto a = run_config(c), b = run_config(c);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("perverse preconditions exit 2") {
  TempDir dir;
  auto c = command("perverse", toy5_model(dir));
  c.class_spec = "0,0,0,0,0";
  auto o = run_config(c);
  CHECK(o.code == kExitInputError);
  CHECK(o.err.find("zero") != std::string::npos);
  c.class_spec = "1,1,0,0,0";
  CHECK(run_config(c).code == kExitInputError);
  c.class_spec = "1,x";
  CHECK(run_config(c).code == kExitInputError);
  c.class_spec = "sample:-1";
  CHECK(run_config(c).code == kExitInputError);
  c.class_spec = "1,1,1,0,0";
  CHECK(run_config(c).code == kExitOk);
}

TEST_CASE("malformed inputs exit 2") {
  TempDir dir;
  std::ofstream(dir.file("bad.json")) << "{ not json";
  CHECK(run_config(command("validate", dir.file("bad.json"))).code == kExitInputError);
  std::ofstream(dir.file("odd.json"))
      << R"({"n":1,"gram":[["0","1"],["1","0"]],"full_algebra":{"dims":[1,2,1],"odd_dims":[0,4,0],"h2_action":[],"integral":["1"]}})";
  CHECK(run_config(command("validate", dir.file("odd.json"))).code == kExitInputError);
  CHECK(run_config(command("validate", dir.file("missing.json"))).code == kExitInputError);
  auto c = command("llv", toy5_model(dir));
  c.mode = "float";
  CHECK(run_config(c).code == kExitInputError);
}

TEST_CASE("llv exit codes") {
  TempDir dir;
  auto c = command("llv", toy5_model(dir));
  auto o = run_config(c);
  CHECK(o.code == kExitOk);
  auto j = json::parse(o.out);
  CHECK(j["llv"]["dimension"] == 21);
  c.budget = 5;
  CHECK(run_config(c).code == kExitInconclusive);
}

TEST_CASE("user-supplied algebras: LLV equality is informational") {
  TempDir dir;
  auto text = read_file(toy5_model(dir));
  auto j = json::parse(text);
  j.erase("construction");
  std::ofstream(dir.file("user.json")) << j.dump();
  auto o = run_config(command("llv", dir.file("user.json")));
  CHECK(o.code == kExitOk);
  auto r = json::parse(o.out);
  bool info = false;
  for (const auto& e : r["checks"]) info = info || (e["name"] == "llv_equals_so(b2+2)" && e["status"] == "info");
  CHECK(info);
}

TEST_CASE("validate reports a perturbed model with exit 1") {
  TempDir dir;
  auto j = json::parse(read_file(toy5_model(dir)));
  j["full_algebra"]["h2_action"][0][1][1][0] = "7";
  std::ofstream(dir.file("broken.json")) << j.dump();
  auto o = run_config(command("validate", dir.file("broken.json")));
  CHECK(o.code == kExitCheckFailed);
  CHECK(o.err.find("commutativity") != std::string::npos);
}

TEST_CASE("sample-isotropic") {
  TempDir dir;
  auto c = command("sample-isotropic", toy5_model(dir));
  c.count = 4;
  auto o = run_config(c);
  CHECK(o.code == kExitOk);
  auto j = json::parse(o.out);
  CHECK(j["samples"].size() == 4);
}

TEST_CASE("model without full_algebra is built on load") {
  TempDir dir;
  std::ofstream(dir.file("lat.json"))
      << R"({"name":"u3","n":1,"gram":[["0","1","0"],["1","0","0"],["0","0","-2"]],"hyperbolic_pair":[0,1]})";
  auto o = run_config(command("check-all", dir.file("lat.json")));
  CHECK(o.code == kExitOk);
  auto j = json::parse(o.out);
  bool warned = false;
  for (const auto& e : j["checks"]) warned = warned || e["status"] == "warn";
  CHECK(warned);
}

TEST_CASE("command-line parsing") {
  const std::string bin = IHLAB_BINARY;
  CHECK(shell(bin + " --help > /dev/null") == 0);
  CHECK(shell(bin + " frobnicate > /dev/null 2>&1") == kExitInputError);
  CHECK(shell(bin + " perverse > /dev/null 2>&1") == kExitInputError);
  TempDir dir;
  const auto model = dir.file("k.json");
  CHECK(shell(bin + " build-sh --lattice toy5 --n 1 -o " + model + " 2> /dev/null") == 0);
  CHECK(shell(bin + " perverse " + model + " --class 0,0,0,0,0 > /dev/null 2>&1") == kExitInputError);
  CHECK(shell(bin + " check-all " + model + " --seed 7 -o " + dir.file("r.json") + " 2> /dev/null") == 0);
  CHECK(fs::exists(dir.file("r.txt")));
}
