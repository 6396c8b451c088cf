#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support.hpp"

#include "fishgame/cli.hpp"

using namespace fishgame;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("fishgame_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(dir_, ec); }

  std::string write(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream f(p, std::ios::binary);
    f << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path dir_;
};

const char* kReferenceDoc = R"({
  "market": {"a": 10, "b": 0.01},
  "stock": {"r": 1000, "s": 1},
  "players": [
    {"id": "A", "q": 0.01, "g": 1, "h": 100, "m": 1, "p": 10, "k": 0.1},
    {"id": "B", "q": 0.01, "g": 1, "h": 100, "m": 1, "p": 10, "k": 0.1}
  ],
  "objective": "profit"
})";

const char* kProfitDifferentDoc = R"({
  "market": {"a": 10, "b": 0.01},
  "stock": {"r": 1000, "s": 1},
  "players": [
    {"id": "A", "q": 0.01, "g": 1, "h": 100, "m": 4.666666666666667, "p": 10, "k": 0.1},
    {"id": "B", "q": 0.01, "g": 1, "h": 100, "m": 6.75, "p": 10, "k": 0.1}
  ],
  "objective": "profit"
})";

const char* kCapacityEqualDoc = R"({
  "market": {"a": 10, "b": 0.01},
  "stock": {"r": 1000, "s": 1},
  "players": [
    {"id": "A", "q": 0.01, "g": 1, "h": 100, "m": 1, "p": 10, "k": 2.3},
    {"id": "B", "q": 0.01, "g": 1, "h": 100, "m": 1, "p": 10, "k": 2.3}
  ],
  "objective": "capacity",
  "solver": {"init": [200, 200]}
})";

}  // namespace

TEST_CASE("cli threshold reports the golden value") {
  TempDir tmp;
  const std::string scenario = tmp.write("ref.json", kReferenceDoc);
  const CliRun r = run({"threshold", scenario});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.at("players").size() == 2);
  REQUIRE_THAT(doc.at("players")[0].at("threshold").get<double>(),
               Catch::Matchers::WithinRel(testutil::kReferenceThreshold, 1e-9));
  REQUIRE(doc.at("players")[0].at("sensitivities").at("dT_dk").get<double>() < 0.0);
}

TEST_CASE("cli runs are byte-deterministic") {
  TempDir tmp;
  const std::string scenario = tmp.write("ref.json", kReferenceDoc);
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"threshold", scenario},
        std::vector<std::string>{"equilibrium", scenario},
        std::vector<std::string>{"bargain", scenario, "--grid-steps", "81"},
        std::vector<std::string>{"field", scenario, "--grid-steps", "41"},
        std::vector<std::string>{"sweep", scenario, "--param", "players.A.k", "--from",
                                 "0.1", "--to", "1", "--steps", "4"}}) {
    const CliRun first = run(args);
    const CliRun second = run(args);
    REQUIRE(first.code == 0);
    REQUIRE(second.code == first.code);
    REQUIRE(second.out == first.out);
  }
}

TEST_CASE("cli equilibrium writes the artifacts") {
  TempDir tmp;
  const std::string scenario = tmp.write("ref.json", kReferenceDoc);
  const std::string out = tmp.path("eq.json");
  const CliRun r = run({"equilibrium", scenario, "--out", out});
  REQUIRE(r.code == 0);

  std::ifstream json_in(out);
  REQUIRE(json_in.good());
  const auto doc = nlohmann::json::parse(json_in);
  REQUIRE(doc.at("converged").get<bool>());
  REQUIRE(doc.at("excluded").is_null());

  std::ifstream trace_in(tmp.path("eq_trace.csv"));
  REQUIRE(trace_in.good());
  std::string header;
  std::getline(trace_in, header);
  REQUIRE(header == "iter,y_a,y_b");
}

TEST_CASE("cli bargain flags the empty set for distant thresholds") {
  TempDir tmp;
  const std::string scenario = tmp.write("far.json", kProfitDifferentDoc);
  const CliRun r = run({"bargain", scenario});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.at("empty").get<bool>());
  REQUIRE(doc.at("reference_kind") == "equilibrium");
}

TEST_CASE("cli bargain reports the sharing line for the degenerate capacity game") {
  TempDir tmp;
  const std::string scenario = tmp.write("cap.json", kCapacityEqualDoc);
  const CliRun r = run({"bargain", scenario, "--grid-steps", "81"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.at("reference_kind") == "threat");
  REQUIRE_FALSE(doc.at("empty").get<bool>());
  REQUIRE(doc.contains("sharing_line"));
  REQUIRE(doc.at("sharing_line").size() == 11);
}

TEST_CASE("cli sweep emits a strictly monotone threshold column") {
  TempDir tmp;
  const std::string scenario = tmp.write("ref.json", kReferenceDoc);
  const CliRun r = run({"sweep", scenario, "--param", "players.A.k", "--from", "0.1",
                        "--to", "2", "--steps", "5"});
  REQUIRE(r.code == 0);

  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  REQUIRE(line == "players.A.k,threshold_a,threshold_b");
  double prev = std::numeric_limits<double>::infinity();
  while (std::getline(lines, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double t_a = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    REQUIRE(t_a < prev);
    prev = t_a;
  }
}

TEST_CASE("cli equalize hits the calibrated rate of return") {
  TempDir tmp;
  const std::string scenario = tmp.write("ref.json", kReferenceDoc);
  const CliRun r = run(
      {"equalize", scenario, "--player", "A", "--lever", "rate_of_return", "--target", "400"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE_THAT(doc.at("value").get<double>(), Catch::Matchers::WithinAbs(2.3, 1e-6));
  REQUIRE_THAT(doc.at("achieved_threshold").get<double>(),
               Catch::Matchers::WithinRel(400.0, 1e-9));
}

TEST_CASE("cli exit codes follow the error contract") {
  TempDir tmp;

  SECTION("malformed scenario: 2") {
    const std::string bad = tmp.write("bad.json", "{ not json");
    REQUIRE(run({"threshold", bad}).code == 2);
  }
  SECTION("unknown field: 2") {
    std::string doc = kReferenceDoc;
    doc.replace(doc.find("\"q\": 0.01"), 9, "\"efficency\": 0.01");
    const std::string bad = tmp.write("unknown.json", doc);
    REQUIRE(run({"threshold", bad}).code == 2);
  }
  SECTION("missing scenario file: 2") {
    REQUIRE(run({"threshold", tmp.path("nope.json")}).code == 2);
  }
  SECTION("bad usage: 2") {
    const std::string scenario = tmp.write("ref.json", kReferenceDoc);
    REQUIRE(run({"equalize", scenario, "--player", "A"}).code == 2);
    REQUIRE(run({"nonsense", scenario}).code == 2);
  }
  SECTION("meaningless margin: 3") {
    std::string doc = kReferenceDoc;
    doc.replace(doc.find("\"g\": 1"), 6, "\"g\": 10");
    const std::string bad = tmp.write("margin.json", doc);
    REQUIRE(run({"threshold", bad}).code == 3);
  }
  SECTION("unrealistic threshold: 3") {
    std::string doc = kReferenceDoc;
    doc.replace(doc.find("\"k\": 0.1"), 8, "\"k\": 50");
    const std::string bad = tmp.write("unrealistic.json", doc);
    REQUIRE(run({"threshold", bad}).code == 3);
  }
  SECTION("non-convergence: 4") {
    std::string doc = kReferenceDoc;
    doc.replace(doc.find("\"objective\""), 11, "\"solver\": {\"max_iters\": 1}, \"objective\"");
    const std::string slow = tmp.write("slow.json", doc);
    REQUIRE(run({"equilibrium", slow}).code == 4);
  }
  SECTION("not-applicable analysis: 5") {
    const std::string capacity = tmp.write("cap.json", kCapacityEqualDoc);
    REQUIRE(run({"bargain", capacity, "--reference", "equilibrium", "--grid-steps", "41"})
                .code == 5);
    const std::string reference = tmp.write("ref.json", kReferenceDoc);
    REQUIRE(run({"equalize", reference, "--player", "A", "--lever", "rate_of_return",
                 "--target", "5000"})
                .code == 5);
  }
}

TEST_CASE("cli field output is a well-formed raster") {
  TempDir tmp;
  const std::string scenario = tmp.write("ref.json", kReferenceDoc);
  const CliRun r = run({"field", scenario, "--player", "B", "--kind", "rate_of_return",
                        "--grid-steps", "21"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  REQUIRE(header == "y,k,feasible,value");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(lines, line)) ++rows;
  REQUIRE(rows == 21 * 21);
}
