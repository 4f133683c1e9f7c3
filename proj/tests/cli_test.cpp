#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "fta/cli.hpp"

using fixtures::data_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fta::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> on_example(std::string command, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{std::move(command), data_path("a_ex.fta"), "-t", fixtures::kTexText};
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::string wide_term(int n) {
  std::string text = "x1";
  for (int i = 2; i <= n; ++i) text = "f1(" + text + ",x" + std::to_string(i) + ")";
  return text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check") {
  auto r = cli({"check", data_path("a_ex.fta")});
  CHECK(r.code == 0);
  CHECK(r.out == "complete deterministic: 2 states, 12 rules\n");

  const auto dir = std::filesystem::temp_directory_path() / "fta_cli_test";
  std::filesystem::create_directories(dir);
  const auto broken = (dir / "missing.fta").string();
  std::ofstream(broken) << fixtures::a_ex_text_replacing("rule: f1(q1,q0) -> q0\n", "");
  r = cli({"check", broken});
  CHECK(r.code == 1);
  CHECK(r.out == "missing: f1(q1,q0)\n");

  CHECK(cli({"check", (dir / "nonexistent.fta").string()}).code == 2);
  const auto garbage = (dir / "garbage.fta").string();
  std::ofstream(garbage) << "signature 0/0\n";
  CHECK(cli({"check", garbage}).code == 2);
}

TEST_CASE("run") {
  auto r = cli(on_example("run", {"--assign", "x1=0,x2=1,x3=1,x4=0"}));
  CHECK(r.code == 0);
  CHECK(r.out == "q1\n");
  r = cli(on_example("run", {"--assign", "x1=1,x2=1,x3=1,x4=0"}));
  CHECK(r.out == "q0\n");
  r = cli({"run", data_path("a_ex.fta"), "-t", "g(f1(x3,f1(x4,x3)))", "--assign", "x3=0,x4=1", "--partial"});
  CHECK(r.code == 0);
  CHECK(r.out == "@q1\n");
  r = cli(on_example("run", {"--assign", "x3=0,x4=1"}));
  CHECK(r.out == "f1(g(f1(x1,x2)),f2(@q1,g(f1(x2,x1))))\n");
  r = cli(on_example("run", {"--assign", "x1=0,x2=0,x3=0,x4=1", "--trace"}));
  CHECK(r.out.find("2.1 q1\n") != std::string::npos);
  CHECK(r.out.find("2.1.1.2 q0\n") != std::string::npos);
  r = cli({"run", data_path("a_ex.fta"), "-f", data_path("t_ex.term"), "--assign", "x1=0,x2=1,x3=1,x4=0"});
  CHECK(r.out == "q1\n");
  CHECK(cli(on_example("run", {"--assign", "x9=0"})).code == 2);
  CHECK(cli(on_example("run", {"--assign", "x1=7"})).code == 2);
  CHECK(cli({"run", data_path("a_ex.fta"), "-t", "h(x1)"}).code == 2);
  CHECK(cli({"run", data_path("a_ex.fta")}).code == 2);
  CHECK(cli({"run", data_path("a_ex.fta"), "-t", "x1", "-f", data_path("t_ex.term")}).code == 2);
}

TEST_CASE("essential") {
  auto r = cli(on_example("essential", {"--position", "1.1"}));
  CHECK(r.code == 0);
  CHECK(r.out ==
        "1.1: essential\n"
        "  gamma1: x1=0 x2=0 x3=0 x4=0\n"
        "  gamma2: x1=1 x2=1 x3=0 x4=0\n"
        "  subtree: q0 / q1\n"
        "  root: q1 / q0\n");
  r = cli(on_example("essential", {"--position", "2.1"}));
  CHECK(r.code == 1);
  CHECK(r.out == "2.1: fictive\n");
  r = cli(on_example("essential"));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("ε: essential\n", 0) == 0);
  CHECK(r.out.find("\n1: essential\n") != std::string::npos);
  CHECK(r.out.find("essential variables: x1 x2\n") != std::string::npos);
  CHECK(r.out.find("essential positions prefix-closed: yes\n") != std::string::npos);
  CHECK(cli(on_example("essential", {"--position", "3.3"})).code == 2);
  CHECK(cli(on_example("essential", {"--position", "1..1"})).code == 2);
  CHECK(cli(on_example("essential", {"--position", "e"})).code == 0);
}

TEST_CASE("separable") {
  auto r = cli(on_example("separable", {"--set", "1.1"}));
  CHECK(r.code == 0);
  CHECK(r.out == "separable\nwitness: x3=0 x4=0\n");
  r = cli(on_example("separable", {"--set", "2.1"}));
  CHECK(r.code == 4);
  CHECK(r.err.find("position 2.1 is not essential") != std::string::npos);
  r = cli(on_example("separable", {"--set", "1", "--wrt", "1.1"}));
  CHECK(r.code == 4);
  CHECK(r.err.find("sets not independent") != std::string::npos);
}

TEST_CASE("prune") {
  auto r = cli(on_example("prune"));
  CHECK(r.code == 0);
  CHECK(r.out == "determining: 1 | reduced: g(f1(x1,x2)) | nodes 16→4 (75.0% saved)\n");
  r = cli(on_example("prune", {"--verify"}));
  CHECK(r.out.find("soundness: OK (16 assignments)\n") != std::string::npos);
  r = cli({"prune", data_path("a_ex.fta"), "-t", "f1(x1,x2)"});
  CHECK(r.code == 0);
  CHECK(r.out == "no reduction\n");
}

TEST_CASE("verify") {
  auto r = cli(on_example("verify"));
  CHECK(r.code == 1);
  CHECK(r.out.find("P4 FAIL") != std::string::npos);
  CHECK(r.out.find("P6 PASS 1/1") != std::string::npos);
  r = cli({"verify", "--random", "--seed", "42", "--count", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("P1 PASS 0/0") != std::string::npos);
  r = cli({"verify", "--random", "--seed", "3", "--count", "20", "--json"});
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["report"]["properties"].size() == 7);
  CHECK(doc["report"]["properties"][0]["checked"] == 20);
  CHECK(doc["report"]["unexplained_failures"] == 0);
  CHECK(cli({"verify"}).code == 2);

  const auto dir = std::filesystem::temp_directory_path() / "fta_cli_dump";
  std::filesystem::remove_all(dir);
  r = cli({"verify", data_path("a_ex.fta"), "-t", fixtures::kTexText, "--dump-dir", dir.string()});
  CHECK(std::filesystem::exists(dir / "P4-0000.fta"));
  CHECK(std::filesystem::exists(dir / "P4-0000.term"));
  std::ifstream in(dir / "P4-0000.term");
  std::string line;
  std::getline(in, line);
  CHECK(line == fixtures::kTexText);
}

TEST_CASE("json output carries the same information") {
  auto r = cli(on_example("separable", {"--set", "1.1", "--json"}));
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  for (const char* key : {"command", "inputs", "verdict", "witnesses", "positions", "report"}) CHECK(doc.contains(key));
  CHECK(doc["command"] == "separable");
  CHECK(doc["verdict"] == "separable");
  CHECK(doc["witnesses"][0] == nlohmann::json{{"x3", "0"}, {"x4", "0"}});

  r = cli({"--json", "essential", data_path("a_ex.fta"), "-t", fixtures::kTexText, "--position", "1.1"});
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["witnesses"][0]["subtree_states"] == nlohmann::json{"q0", "q1"});
  CHECK(doc["witnesses"][0]["gamma2"]["x1"] == "1");

  r = cli(on_example("prune", {"--json"}));
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["report"]["saved_fraction"] == 0.75);
  CHECK(doc["positions"]["determining"] == "1");

  r = cli(on_example("separable", {"--set", "2.1", "--json"}));
  CHECK(r.code == 4);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["verdict"] == "error");
}

TEST_CASE("budget") {
  auto r = cli({"essential", data_path("a_ex.fta"), "-t", wide_term(25)});
  CHECK(r.code == 3);
  CHECK(cli({"prune", data_path("a_ex.fta"), "-t", wide_term(25)}).code == 3);
  CHECK(cli(on_example("essential", {"--max-assignments", "8"})).code == 3);
  CHECK(cli(on_example("essential", {"--max-assignments", "0"})).code == 2);
  CHECK(cli({"--max-assignments", "16", "essential", data_path("a_ex.fta"), "-t", fixtures::kTexText}).code == 0);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

}  // TEST_SUITE
