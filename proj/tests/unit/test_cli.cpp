#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  ::unsetenv("CARTILAB_CONFIG");
  args.insert(args.begin(), "cartilab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cartilab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  const auto r = run(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "cartilab_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

const std::string kSource = CARTILAB_SOURCE_DIR;
const std::string kPreset = kSource + "/configs/paper_preset.toml";

// Value of a {"value", "unit"} pair in millimetres or mm3.
double in_mm(const json& q) {
  const auto unit = q.at("unit").get<std::string>();
  const double v = q.at("value").get<double>();
  if (unit == "mm") return v;
  if (unit == "cm") return v * 10;
  if (unit == "mm3") return v;
  if (unit == "cm3") return v * 1000;
  FAIL("unexpected unit " << unit);
  return 0;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("design verdicts") {
  const auto r = run({"design", "--r-mm", "3", "--delta-mm", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pitch OK") != std::string::npos);
  const auto j = run_json({"--units", "si", "design", "--r-mm", "3", "--delta-mm", "1"});
  CHECK(in_mm(j["max_pitch"]) == doctest::Approx(2 * std::sqrt(5.0)));
  for (const auto& v : j["verdicts"]) CHECK(v["ok"].get<bool>());
  const auto tight = run_json({"design", "--r-mm", "3", "--delta-mm", "0.1"});
  CHECK_FALSE(tight["verdicts"][1]["ok"].get<bool>());
}

TEST_CASE("unit system does not change the physics") {
  for (const auto& cmd : std::vector<std::vector<std::string>>{
           {"design", "--r-mm", "3", "--delta-mm", "1"},
           {"exude", "--load-kgf", "6.8"},
           {"exude", "--load", "15 lb"}}) {
    auto paper = cmd;
    paper.insert(paper.begin(), {"--units", "paper"});
    auto si = cmd;
    si.insert(si.begin(), {"--units", "si"});
    const auto a = run_json(paper);
    const auto b = run_json(si);
    if (a.contains("max_pitch")) CHECK(in_mm(a["max_pitch"]) == doctest::Approx(in_mm(b["max_pitch"])).epsilon(1e-12));
    if (a.contains("sheet") && a["sheet"].contains("total")) {
      CHECK(in_mm(a["sheet"]["total"]) == doctest::Approx(in_mm(b["sheet"]["total"])).epsilon(1e-12));
      CHECK(in_mm(a["deflection"]) == doctest::Approx(in_mm(b["deflection"])).epsilon(1e-12));
    }
  }
}

TEST_CASE("exude loads in any unit agree") {
  const auto kgf = run_json({"exude", "--load-kgf", "6.8"});
  const auto n = run_json({"exude", "--load-n", "66.68522"});
  const auto text = run_json({"exude", "--load", "6.8 kgf"});
  const double v = in_mm(kgf["sheet"]["total"]);
  CHECK(in_mm(n["sheet"]["total"]) == doctest::Approx(v).epsilon(1e-12));
  CHECK(in_mm(text["sheet"]["total"]) == doctest::Approx(v).epsilon(1e-12));
  CHECK(kgf["constant_check"]["verdict"] == "matches_at_reference_load_only");
  const auto half = run_json({"exude", "--load-kgf", "3.4"});
  CHECK(half["constant_check"]["verdict"] == "discrepancy");
  const auto r = run({"exude", "--load-kgf", "6.8"});
  CHECK(r.out.find("agreeing load") != std::string::npos);
}

TEST_CASE("json output is deterministic") {
  for (const auto& cmd : std::vector<std::vector<std::string>>{
           {"--json", "design", "--r-mm", "3", "--delta-mm", "1"},
           {"--json", "exude", "--load-lb", "8"},
           {"--json", "friction"},
           {"--json", "simulate", kSource + "/data/protocols/paper_5cycles_base.json"},
           {"layout", "--surface", "cap", "--format", "json"}}) {
    const auto a = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == run(cmd).out);
    CHECK(json::accept(a.out));
  }
}

TEST_CASE("friction table") {
  const auto r = run({"--config", kPreset, "friction"});
  CHECK(r.code == 0);
  CHECK(r.out.find(">= 0.520") != std::string::npos);
  CHECK(r.out.find("0.079") != std::string::npos);
  const auto csv = temp_path("friction.csv");
  const auto js = temp_path("friction.json");
  CHECK(run({"friction", "--csv-out", csv.string(), "--json-out", js.string()}).code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "condition,N_g,W_g,mu,mu_unc,censored");
  std::ifstream jin(js);
  CHECK(json::parse(jin).size() == 4);
}

TEST_CASE("simulate") {
  const auto nobase = kSource + "/data/protocols/paper_5cycles_nobase.json";
  const auto r = run({"simulate", nobase});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("step,action,", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 16);
  CHECK(r.err.find("summary: load 5") != std::string::npos);

  const auto j = run_json({"simulate", nobase});
  REQUIRE(j["loads"].size() == 5);
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(in_mm(j["loads"][i]["exuded"]) < in_mm(j["loads"][i - 1]["exuded"]));
  }

  const auto empty = temp_path("empty.json");
  std::ofstream(empty) << R"({"steps": []})";
  const auto e = run({"simulate", empty.string()});
  CHECK(e.code == 0);
  CHECK(e.out == "step,action,insert_fluid,base_fluid,surface_film,capsule_pool,wiped_total,exuded,mu_est\n");

  const auto bad = temp_path("bad.json");
  std::ofstream(bad) << R"({"steps": [{"jump": true}]})";
  CHECK(run({"simulate", bad.string()}).code == 1);
  std::ofstream(bad) << "{ not json";
  CHECK(run({"simulate", bad.string()}).code == 1);
  CHECK(run({"simulate", (temp_path("missing.json")).string()}).code == 1);
  CHECK(run({"simulate"}).code == 2);
}

TEST_CASE("layout files") {
  const auto stl = temp_path("sheet.stl");
  CHECK(run({"layout", "--format", "stl", "--out", stl.string()}).code == 0);
  CHECK(fs::file_size(stl) == 9684);
  const auto csv = run({"layout"});
  CHECK(csv.code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 10);
  const auto cap = run({"layout", "--surface", "cap", "--format", "stl", "--out", stl.string()});
  CHECK(cap.code == 1);
  CHECK(cap.err.find("unsupported") != std::string::npos);
  // With --out the report takes stdout; without it the layout does.
  const auto cap_json = temp_path("cap.json");
  const auto v = run_json({"layout", "--surface", "cap", "--verify", "--delta-mm", "1", "--format", "json",
                           "--out", cap_json.string()});
  CHECK(v["coverage"]["passed"].get<bool>());
  std::ifstream cin(cap_json);
  CHECK(json::parse(cin)["holes"].size() == v["holes"].get<std::size_t>());
  const auto to_stdout = run({"--json", "layout"});
  CHECK(to_stdout.out.rfind("x_mm,", 0) == 0);
  CHECK(json::parse(to_stdout.err)["holes"] == 9);
}

TEST_CASE("reproduce-paper") {
  const auto r = run({"reproduce-paper", "--data-dir", kSource});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("10 of 10 checks passed") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"--units", "imperial", "design"}).code == 2);
  CHECK(run({"design", "--delta-mm", "1", "--pitch-mm", "2"}).code == 2);
  CHECK(run({"exude", "--load-kgf", "1", "--load-lb", "2"}).code == 2);
  CHECK(run({"exude", "--load-kgf", "-1"}).code == 1);
  CHECK(run({"exude", "--load", "3 mm"}).code == 1);
  CHECK(run({"layout", "--format", "obj"}).code == 1);
  CHECK(run({"layout", "--gap-mm", "2", "--pitch-mm", "4"}).code == 2);
  CHECK(run({"--config", "/nonexistent.toml", "design"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  const auto bad_cfg = temp_path("bad.toml");
  std::ofstream(bad_cfg) << "[cell]\ncount = -3\n";
  const auto r = run({"--config", bad_cfg.string(), "design"});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);
}

}
