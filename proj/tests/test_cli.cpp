#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "rmetric/cli.hpp"

using rmetric::cli::run;
using json = nlohmann::json;

namespace {

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("rmetric_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("count prints the JSON envelope") {
  const auto res = run({"count", "--r", "3", "--n", "3"});
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.output);
  CHECK(j["command"] == "count");
  CHECK(j["exit_code"] == 0);
  CHECK(j["params"]["r"] == 3);
  CHECK(j["payload"]["m_count"] == "24");
  CHECK(j["payload"]["c_count"] == "24");
}

TEST_CASE("verify and gadget commands") {
  CHECK(run({"verify", "size-lemma", "--r-max", "5"}).exit_code == 0);
  const auto g = run({"gadget-h", "--r", "3"});
  REQUIRE(g.exit_code == 0);
  CHECK(json::parse(g.output)["payload"]["d"] == json::parse("[1,2,3,1,2,1]"));
}

TEST_CASE("exit codes") {
  CHECK(run({"count", "--r", "2", "--n", "3"}).exit_code == 2);
  CHECK(run({"count", "--r", "5", "--n", "5", "--budget", "100"}).exit_code == 3);
  const auto cx = run({"verify", "amalgam-mr", "--r", "3", "--rule", "max"});
  CHECK(cx.exit_code == 4);
  CHECK(json::parse(cx.output)["payload"]["counterexamples"] == 1);
  CHECK(run({"bogus"}).exit_code == 64);
  CHECK(run({"count", "--r", "3"}).exit_code == 64);
  CHECK(run({}).exit_code == 64);
  CHECK(run({"gadget-h", "--r", "3", "--format", "csv"}).exit_code == 64);
  CHECK(run({"--help"}).exit_code == 0);

  const auto bad = run({"count", "--r", "2", "--n", "3"});
  CHECK(json::parse(bad.output)["payload"]["error"] == "domain_error");
}

TEST_CASE("reruns are byte-identical without timing") {
  const std::vector<std::string> args{"count", "--r", "4", "--n", "4", "--no-timing"};
  CHECK(run(args).output == run(args).output);
  const std::vector<std::string> sample{"sample", "--r", "4", "--n", "4", "--samples", "20", "--seed", "5"};
  CHECK(run(sample).output == run(sample).output);
}

TEST_CASE("thread count does not change output") {
  const auto one = run({"count", "--r", "4", "--n", "5", "--no-timing", "--threads", "1"});
  const auto four = run({"count", "--r", "4", "--n", "5", "--no-timing", "--threads", "4"});
  CHECK(one.output == four.output);
}

TEST_CASE("csv and jsonl output") {
  const auto csv = run({"count", "--r", "4", "--n", "3", "--format", "csv", "--no-timing"});
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.output.rfind("r,n,m_count,c_count,ratio,elapsed_ms\n4,3,52,27,", 0) == 0);

  const auto lines = run({"enumerate", "--r", "3", "--n", "3", "--format", "jsonl"});
  REQUIRE(lines.exit_code == 0);
  CHECK(std::count(lines.output.begin(), lines.output.end(), '\n') == 24);
  CHECK(json::parse(lines.output.substr(0, lines.output.find('\n')))["d"] == json::parse("[1,1,1]"));
}

TEST_CASE("file inputs") {
  const std::string h = temp_file("h.json", R"({"r":3,"n":4,"d":[1,2,3,1,2,1]})");
  const auto member = run({"membership", "--in", h});
  REQUIRE(member.exit_code == 0);
  CHECK(json::parse(member.output)["payload"]["member"] == false);

  const std::string threes = temp_file("threes.json", R"({"r":3,"n":4,"d":[3,3,3,3,3,3]})");
  const auto inj = run({"inject", "--in", threes});
  REQUIRE(inj.exit_code == 0);
  CHECK(json::parse(inj.output)["payload"]["case"] == "D1");
  CHECK(run({"inject", "--in", h}).exit_code == 2);

  const std::string a = temp_file("a.json", R"({"r":3,"n":2,"d":[1]})");
  const auto am = run({"amalgamate", "--a", a, "--b", a, "--shared", "1:1", "--kind", "mr"});
  REQUIRE(am.exit_code == 0);
  CHECK(json::parse(am.output)["payload"]["d"]["d"] == json::parse("[1,1,2]"));

  CHECK(run({"membership", "--in", "/nonexistent/x.json"}).exit_code == 2);
  const std::string junk = temp_file("junk.json", "{not json");
  CHECK(run({"membership", "--in", junk}).exit_code == 2);
}
