#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rmtnet/error.hpp"
#include "rmtnet/ingest.hpp"
#include "rmtnet/json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "rmtnet_cli_test";

int run(const std::string &args) {
  const std::string cmd = std::string(RMTNET_CLI_PATH) + " " + args + " >" +
                          (kWork / "stdout.txt").string() + " 2>" +
                          (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path &p, const std::string &text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string path(const std::string &name) { return (kWork / name).string(); }

struct Workdir {
  Workdir() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
  ~Workdir() { fs::remove_all(kWork); }
};

} // namespace

TEST_CASE("synth then timeseries is byte-reproducible") {
  Workdir w;
  REQUIRE(run("synth --periods 6 --n-core 3 --n-periphery 7 --link-prob 0.1 "
              "--link-prob-end 0.6 --seed 5 --out " + path("flows.csv")) == 0);
  const auto flows = rmtnet::read_flow_csv(path("flows.csv"));
  CHECK(flows.periods().size() == 6);
  CHECK(flows.entities().size() == 10);

  const std::string common = "timeseries --input " + path("flows.csv") +
                             " --null-samples 12 --out ";
  REQUIRE(run(common + path("a") + " --seed 9") == 0);
  REQUIRE(run(common + path("b") + " --seed 9 --workers 3") == 0);
  for (const auto &name : {"timeseries.csv", "timeseries.json",
                           "participation_2000-Q1.csv", "participation_2001-Q2.csv"}) {
    CHECK(fs::exists(kWork / "a" / name));
    CHECK(slurp(kWork / "a" / name) == slurp(kWork / "b" / name));
  }
  REQUIRE(run(common + path("c") + " --seed 10") == 0);
  CHECK(slurp(kWork / "a" / "timeseries.csv") != slurp(kWork / "c" / "timeseries.csv"));
}

TEST_CASE("config file with command line precedence") {
  Workdir w;
  write(kWork / "flows.csv",
        "period,reporter,counterparty,amount\n2008-Q3,A,B,3\n2008-Q3,B,A,5\n2008-Q3,B,C,1\n");
  write(kWork / "cfg.json", R"({"seed": 4, "null_samples": 3, "null_mode": "weight-permute"})");
  REQUIRE(run("analyze --input " + path("flows.csv") + " --config " + path("cfg.json") +
              " --null-samples 5") == 0);
  const auto j = rmtnet::Json::parse(slurp(kWork / "stdout.txt"));
  CHECK(j["config"]["seed"] == 4);
  CHECK(j["config"]["null_samples"] == 5);
  CHECK(j["lambda_max_shuffled"]["mode"] == "weight-permute");
  CHECK(j["lambda_max_shuffled"]["n_samples"] == 5);

  write(kWork / "bad.json", R"({"seed": 4, "bogus": 1})");
  CHECK(run("analyze --input " + path("flows.csv") + " --config " + path("bad.json")) == 3);
}

TEST_CASE("analyze writes per-period exports") {
  Workdir w;
  write(kWork / "flows.csv",
        "period,reporter,counterparty,amount\n2008-Q3,A,B,3\n2008-Q3,B,A,5\n");
  REQUIRE(run("analyze --input " + path("flows.csv") + " --period 2008-Q3 --out " +
              path("out") + " --lambda-values --null-samples 4") == 0);
  const auto spectrum = rmtnet::Json::parse(slurp(kWork / "out" / "2008-Q3_spectrum.json"));
  CHECK(spectrum["mode"] == "directed-perron");
  CHECK(std::abs(spectrum["lambda_max"].get<double>() - std::sqrt(15.0)) <= 1e-12);
  const auto sym = rmtnet::Json::parse(
      slurp(kWork / "out" / "2008-Q3_spectrum_symmetrized.json"));
  CHECK(sym["eigenvalues"].size() == 2);
  const auto null = rmtnet::Json::parse(slurp(kWork / "out" / "2008-Q3_null.json"));
  CHECK(null["period"] == "2008-Q3");
  CHECK(null["lambda_values"].size() == 4);
  const auto snap = rmtnet::snapshot_from_json(
      rmtnet::Json::parse(slurp(kWork / "out" / "2008-Q3_snapshot.json")));
  CHECK(snap.weights(1, 0) == 5.0);
  CHECK(fs::exists(kWork / "out" / "participation_2008-Q3.csv"));

  REQUIRE(run("analyze --input " + path("flows.csv") + " --format dot") == 0);
  CHECK(slurp(kWork / "stdout.txt").find("\"B\" -> \"A\" [weight=5]") != std::string::npos);
}

TEST_CASE("shuffle and dendrogram commands") {
  Workdir w;
  write(kWork / "flows.csv",
        "period,reporter,counterparty,amount\n2008-Q3,A,B,4\n2008-Q3,B,A,4\n"
        "2008-Q3,A,C,2\n2008-Q3,C,A,2\n");
  REQUIRE(run("dendrogram --input " + path("flows.csv") + " --format newick") == 0);
  CHECK(slurp(kWork / "stdout.txt") == "((A:0,B:0):0.75,C:0.75);\n");

  REQUIRE(run("dendrogram --input " + path("flows.csv")) == 0);
  const auto d = rmtnet::Json::parse(slurp(kWork / "stdout.txt"));
  CHECK(d["leaf_labels"] == rmtnet::Json::parse(R"(["A","B","C"])"));
  CHECK(d["merges"].size() == 2);

  REQUIRE(run("shuffle --input " + path("flows.csv") + " --seed 3 --format csv") == 0);
  const auto shuffled = rmtnet::parse_flow_csv(slurp(kWork / "stdout.txt"));
  CHECK(shuffled.size() == 4);
  CHECK(shuffled.total_amount() == 12.0);
  const auto first = slurp(kWork / "stdout.txt");
  REQUIRE(run("shuffle --input " + path("flows.csv") + " --seed 3 --format csv") == 0);
  CHECK(slurp(kWork / "stdout.txt") == first);
}

TEST_CASE("convert-bis command") {
  Workdir w;
  write(kWork / "lbs.csv",
        "\"TIME_PERIOD\",\"L_REP_CTY\",\"L_CP_COUNTRY\",\"L_MEASURE\",\"OBS_VALUE\"\n"
        "\"2008-Q3\",\"US\",\"GB\",\"S\",\"5\"\n"
        "\"2008-Q3\",\"US\",\"GB\",\"S\",\"7\"\n"
        "\"2008-Q3\",\"GB\",\"US\",\"F\",\"7\"\n"
        "\"2008-Q3\",\"GB\",\"US\",\"S\",\"\"\n");
  write(kWork / "map.txt", "filter.L_MEASURE=S\n");
  REQUIRE(run("convert-bis --input " + path("lbs.csv") + " --mapping " + path("map.txt") +
              " --out " + path("flows.csv")) == 0);
  CHECK(slurp(kWork / "flows.csv") ==
        "period,reporter,counterparty,amount\n2008-Q3,US,GB,12\n");
  CHECK(slurp(kWork / "stderr.txt").find("dropped missing 1") != std::string::npos);

  write(kWork / "bad_map.txt", "value=valuee\n");
  CHECK(run("convert-bis --input " + path("lbs.csv") + " --mapping " + path("bad_map.txt")) == 3);
}

TEST_CASE("exit codes") {
  Workdir w;
  write(kWork / "selfloop.csv", "period,reporter,counterparty,amount\n2008-Q3,US,US,10\n");
  CHECK(run("timeseries --input " + path("selfloop.csv")) == 1);
  CHECK(slurp(kWork / "stderr.txt").find("row 2") != std::string::npos);
  CHECK(run("timeseries --input " + path("missing.csv")) == 3);
  CHECK(run("timeseries") == 3);
  CHECK(run("analyze --input " + path("selfloop.csv") + " --null-mode rewire") == 3);
  CHECK(run("--help") == 0);
}

TEST_CASE("error kinds map to exit codes") {
  using rmtnet::ErrorKind;
  CHECK(rmtnet::exit_code(ErrorKind::Data) == 1);
  CHECK(rmtnet::exit_code(ErrorKind::Numerical) == 2);
  CHECK(rmtnet::exit_code(ErrorKind::Config) == 3);
  CHECK(rmtnet::exit_code(ErrorKind::Io) == 3);
}
