#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curvgate/cli.hpp"
#include "curvgate/curvature.hpp"
#include "curvgate/io.hpp"
#include "curvgate/kahler.hpp"

using namespace curvgate;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path tmp_dir() {
  const char* t = std::getenv("CURVGATE_TEST_TMP");
  fs::path p = fs::path(t ? t : fs::temp_directory_path().string()) / "cli_files";
  fs::create_directories(p);
  return p;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = tmp_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

const Json* verdict(const Json& report, const std::string& id) {
  for (const auto& v : report["verdicts"]["entries"])
    if (v["theorem"] == id) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("model command") {
  const Run cp = run({"model", "cp-geodesic", "--n", "4", "--m", "4", "--format", "json"});
  REQUIRE(cp.code == kExitOk);
  const Json j = cp.json();
  CHECK(j["data"]["point"]["scalar"] == 24.0);
  CHECK(j["verdicts"]["entries"].size() == 4);
  for (const auto& v : j["verdicts"]["entries"]) {
    CHECK(std::abs(v["margin_min"].get<double>()) < 1e-10);
    CHECK(v["satisfied"] == "boundary");
  }

  const Json c1 = run({"model", "clifford", "--n", "5", "--p", "1", "--mu", "0.5", "--format", "json"}).json();
  REQUIRE(verdict(c1, "scalar-diffeo/space-form") != nullptr);
  CHECK((*verdict(c1, "scalar-diffeo/space-form"))["margin_min"].get<double>() ==
        doctest::Approx(-0.1875).epsilon(1e-12));
  CHECK((*verdict(c1, "scalar-diffeo/space-form"))["satisfied"] == "violated");

  const Json c2 = run({"model", "clifford", "--n", "4", "--p", "2", "--mu", "0.3", "--format", "json"}).json();
  CHECK(std::abs((*verdict(c2, "scalar-homeo/space-form"))["margin_min"].get<double>()) < 1e-10);

  CHECK(run({"model", "cp-geodesic", "--n", "5"}).code == kExitUsage);
  CHECK(run({"model", "clifford", "--mu", "2"}).code == kExitUsage);
  CHECK(run({"model", "torus"}).code == kExitUsage);
}

TEST_CASE("check command") {
  const std::string cfg = write("cp2.json", R"({
    "ambient": {"kind": "space_form", "c": 4, "m": 5}, "eps": 1,
    "points": [{"n": 4, "scalar": 24, "ric2min": 12, "ric4min": 24,
                "normH2": 0, "totally_real": false}]})");
  const Run r = run({"check", cfg, "--format", "json"});
  CHECK(r.code == kExitOk);
  const Json j = r.json();
  for (const char* id : {"scalar-diffeo/general", "ricci2-diffeo/general", "ricci4-homeo/general"}) {
    REQUIRE(verdict(j, id) != nullptr);
    CHECK((*verdict(j, id))["satisfied"] == "boundary");
  }

  const std::string zero = write("zero.json", R"({
    "ambient": {"kind": "space_form", "c": 0},
    "points": [{"n": 4, "scalar": 0, "ric2min": 0, "normH2": 0, "totally_real": true}]})");
  const Json z = run({"check", zero, "--format", "json"}).json();
  for (const auto& v : z["verdicts"]["entries"]) {
    CHECK(v["satisfied"] == "boundary");
    CHECK(v["hypothesis_met"] == false);
  }

  const Run bad = run({"check", write("bad.json", R"({"ambient": {"kind": "space_form"}, "points": []})")});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("$.ambient.c") != std::string::npos);
  const Run broken = run({"check", write("broken.json", "{\"ambient\": ")});
  CHECK(broken.code == kExitUsage);
  CHECK(broken.err.find("malformed json") != std::string::npos);
  CHECK(run({"check", (tmp_dir() / "missing.json").string()}).code == kExitUsage);
}

TEST_CASE("minimize command") {
  Json doc = {{"n", 5}, {"entries", Json::array()}};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) doc["entries"].push_back({i, j, i, j, 1.0});
  const Run k = run({"minimize", write("kappa1.json", doc.dump()), "--format", "json"});
  REQUIRE(k.code == kExitOk);
  CHECK(k.json()["data"]["value"].get<double>() == doctest::Approx(4.0).epsilon(1e-6));

  const std::string sf = write("sf24.json", tensor_to_json(space_form(2, 4.0).k).dump());
  CHECK(std::abs(run({"minimize", sf, "--format", "json"}).json()["data"]["value"].get<double>()) < 1e-6);
  const Json w = run({"minimize", sf, "--weighted", "--format", "json"}).json();
  CHECK(std::abs(w["data"]["value"].get<double>()) < 1e-6);
  CHECK(w["data"]["weights"].size() == 2);

  const Run asym = run({"minimize", write("asym.json", R"({"n": 4, "entries": [[0, 1, 2, 3, 1]]})")});
  CHECK(asym.code == kExitInput);
  CHECK(asym.err.find("bianchi") != std::string::npos);
  CHECK(run({"minimize", write("small.json", R"({"n": 3, "entries": []})")}).code == kExitInput);
}

TEST_CASE("verify command") {
  const Run r = run({"verify", "all", "--samples", "1", "--format", "json"});
  CHECK(r.code == kExitOk);
  CHECK(r.json()["schema"] == 1);
  CHECK(r.json()["all_pass"] == true);
  CHECK(run({"verify", "nothing"}).code == kExitUsage);
  CHECK(run({"--samples", "0", "verify", "lemmas"}).code == kExitUsage);
  CHECK(run({"--version"}).code == kExitOk);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args = {"verify", "lemmas", "--seed", "7", "--samples", "200",
                                         "--format", "json"};
  setenv("CURVGATE_THREADS", "1", 1);
  const std::string a = run(args).out;
  const std::string b = run(args).out;
  setenv("CURVGATE_THREADS", "4", 1);
  const std::string c = run(args).out;
  unsetenv("CURVGATE_THREADS");
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.find("wall_time_s") == std::string::npos);
}

TEST_CASE("executable exit codes and output file") {
  const char* bin = std::getenv("CURVGATE_BIN");
  if (bin == nullptr) return;
  const std::string out = (tmp_dir() / "report.json").string();
  const auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status(std::string(bin) + " model cp-geodesic --n 6 --format json --out " + out) == 0);
  CHECK(Json::parse(std::ifstream(out))["data"]["point"]["scalar"] == 48.0);
  CHECK(status(std::string(bin) + " minimize " + tmp_dir().string() + "/asym.json") == 3);
  CHECK(status(std::string(bin) + " bogus") == 2);
}
