#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include <json.hpp>

#include "csg/cli.hpp"
#include "csg/game_io.hpp"
#include "fixtures.hpp"

using namespace csg;
using cli::run;

namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(CSG_DATA_DIR) + "/" + name + ".game"; }

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("csg-test-" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("objective and algorithm parsing") {
  auto g = fixture::bundled("fig2").game;
  auto o = cli::parse_objective(g, "safe:not-s4");
  CHECK(o.kind == cli::ObjectiveKind::Safe);
  CHECK(o.set.members() == std::vector<StateId>{0, 1, 2, 3, 5});
  CHECK(cli::parse_objective(g, "reach:s0,s5").set.members() == std::vector<StateId>{0, 5});
  CHECK_THROWS_AS(cli::parse_objective(g, "reach:s9"), InputError);
  CHECK_THROWS_AS(cli::parse_objective(g, "avoid:s1"), InputError);
  CHECK_THROWS_AS(cli::parse_objective(g, "safe:not-s4,s1"), InputError);
  auto a = cli::parse_algorithm("k-uniform:3");
  CHECK(a.algorithm == cli::Algorithm::KUniform);
  CHECK(a.k == std::optional<std::size_t>{3});
  CHECK(cli::parse_algorithm("certify:1/100").eps == std::optional<Rational>{Rational(1, 100)});
  CHECK_THROWS_AS(cli::parse_algorithm("simplex"), InputError);
  CHECK_THROWS_AS(cli::parse_algorithm("certify:two"), InputError);
}

TEST_CASE("solve output is deterministic") {
  for (const auto& fmt : {"text", "json"}) {
    std::vector<std::string> args{"solve", data("ex3step1"), "--objective", "reach:s1", "--algorithm", "reach-si",
                                  "--max-iters", "6", "--format", fmt, "--trace"};
    auto first = run(args);
    auto second = run(args);
    CHECK(first.out == second.out);
    CHECK(first.exit_code == second.exit_code);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"solve", data("fig1"), "--objective", "reach:s0"}).exit_code == 0);
  CHECK(run({"solve", data("missing"), "--objective", "reach:s0"}).exit_code == 1);
  CHECK(run({"solve", data("fig1"), "--objective", "reach:nowhere"}).exit_code == 1);
  CHECK(run({"solve", data("fig1"), "--objective", "reach:s0", "--algorithm", "safety-si"}).exit_code == 1);
  CHECK(run({"solve", data("fig1")}).exit_code == 1);
  CHECK(run({"frobnicate"}).exit_code == 1);
  auto capped = run({"solve", data("ex3full"), "--objective", "safe:not-s2", "--algorithm", "safety-si",
                     "--max-iters", "5"});
  CHECK(capped.exit_code == 2);
  CHECK(capped.out.find("status: capped") != std::string::npos);
  auto budget = run({"solve", data("ex3full"), "--objective", "safe:not-s2", "--algorithm", "k-uniform:5000"});
  CHECK(budget.exit_code == 2);
  CHECK(budget.err.find("budget") != std::string::npos);
}

TEST_CASE("verification agrees for every algorithm on the bundled games") {
  struct Case {
    std::string game, objective, algorithm;
  };
  std::vector<Case> cases{
      {"fig1", "reach:s0", "vi"},        {"fig1", "reach:s0", "reach-si"},
      {"fig2", "safe:not-s4", "safety-si"}, {"fig2", "safe:not-s4", "vi"},
      {"fig2", "reach:s5", "reach-si"},  {"ex3step1", "reach:s1", "reach-si"},
      {"ex3full", "safe:not-s2", "convergent"}, {"ex3full", "safe:not-s2", "k-uniform:3"},
      {"ex3full", "safe:not-s2", "certify:1/20"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.game);
    CAPTURE(c.algorithm);
    auto r = run({"solve", data(c.game), "--objective", c.objective, "--algorithm", c.algorithm, "--max-iters", "20",
                  "--verify", "--format", "json"});
    CHECK(r.exit_code != 3);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["verify"]["ok"] == true);
  }
}

TEST_CASE("text output for the one-player example") {
  auto r = run({"solve", data("fig1"), "--objective", "reach:s0", "--algorithm", "vi", "--trace"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("status: exact") != std::string::npos);
  CHECK(r.out.find("s3  b=1") != std::string::npos);
  CHECK(r.out.find("s2  1/2  (approx 0.50000000000000000000)") != std::string::npos);
}

TEST_CASE("dump-tb round trips through the game parser") {
  auto r = run({"dump-tb", data("fig2"), "--objective", "safe:not-s4", "--at-iteration", "0"});
  REQUIRE(r.exit_code == 0);
  auto parsed = parse_game(r.out);
  REQUIRE(parsed.turn_based);
  CHECK(parsed.turn_based->states[6] == "(s0,{to-s1},{_})");
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["valuation"]["s0"] == "1/3");
  CHECK(doc["back_map"].size() == parsed.turn_based->num_states());
  // the dumped game is itself solvable
  TempDir tmp;
  auto path = tmp.write("tb.game", r.out);
  auto solved = run({"solve", path, "--objective", "safe:not-s4", "--algorithm", "safety-si"});
  CHECK(solved.exit_code == 0);
}

TEST_CASE("dump-tb with an explicit valuation") {
  TempDir tmp;
  auto good = tmp.write("v.json", R"({"s0": "2/3", "s1": "2/3", "s2": "1/3", "s3": "2/3", "s4": "0", "s5": "1"})");
  auto r = run({"dump-tb", data("fig2"), "--objective", "safe:not-s4", "--valuation", good});
  CHECK(r.exit_code == 0);
  // s1 now has both moves optimal
  CHECK(r.out.find("(s1,{_},{to-s0,to-s3})") != std::string::npos);

  auto missing = tmp.write("m.json", R"({"s0": "2/3"})");
  r = run({"dump-tb", data("fig2"), "--objective", "safe:not-s4", "--valuation", missing});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("valuation[s1]") != std::string::npos);

  auto range = tmp.write("r.json", R"({"s0": "5/3", "s1": "2/3", "s2": "1/3", "s3": "2/3", "s4": "0", "s5": "1"})");
  r = run({"dump-tb", data("fig2"), "--objective", "safe:not-s4", "--valuation", range});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("outside [0, 1]") != std::string::npos);
}

TEST_CASE("validate and examples subcommands") {
  CHECK(run({"validate", data("ex3full")}).exit_code == 0);
  TempDir tmp;
  auto bad = tmp.write("bad.game", R"({"type": "concurrent", "states": []})");
  auto r = run({"validate", bad});
  CHECK(r.exit_code == 1);
  CHECK_FALSE(r.err.empty());

  auto list = run({"examples"});
  CHECK(list.exit_code == 0);
  for (const auto& e : bundled_examples()) CHECK(list.out.find(e.name) != std::string::npos);
  auto show = run({"examples", "--show", "ex3step1"});
  CHECK(parse_game(show.out).game.num_states() == 3);
  CHECK(run({"examples", "--show", "nope"}).exit_code == 1);

  auto dir = (tmp.path / "out").string();
  CHECK(run({"examples", "--write", dir}).exit_code == 0);
  CHECK(load_game(dir + "/fig1.game").game.num_states() == 5);
}
