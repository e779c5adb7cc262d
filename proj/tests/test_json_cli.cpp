#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "finmon/cli.hpp"
#include "finmon/json_io.hpp"

using namespace finmon;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::vector<const char*> argv{"finmon"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return RunResult{code, out.str(), err.str()};
}

fs::path write_temp(const std::string& stem, const std::string& text) {
    fs::path p = fs::temp_directory_path() / ("finmon_test_" + stem + ".json");
    std::ofstream(p) << text;
    return p;
}

// a small self-contained workspace exercising every collection kind
const char* kWorkspace = R"({
  "spaces": [
    {"name": "X", "points": [{"label": "a"}, {"label": "b"}]},
    {"name": "Y", "points": [{"label": "c"}, {"label": "d"}]},
    {"name": "Phi", "points": [{"label": "m", "coords": ["-1/2"]},
                               {"label": "p", "coords": ["1/2"]}]}
  ],
  "measures": [
    {"name": "mu", "space": "X", "atoms": [{"label": "a", "weight": "1/2"},
                                           {"label": "b", "weight": "1/2"}]},
    {"name": "nu", "space": "Y", "atoms": [{"label": "c", "weight": "1/4"},
                                           {"label": "d", "weight": "3/4"}]},
    {"name": "unif", "space": "Phi", "atoms": [{"label": "m", "weight": "1/2"},
                                               {"label": "p", "weight": "1/2"}]}
  ],
  "meta_measures": [
    {"name": "dmu", "space": "X", "atoms": [{"measure": "mu", "weight": "1"}]}
  ],
  "raw_pairs": [
    {"name": "R", "dim": 2, "dual_dim": 2, "pairing": [["1", "0"], ["0", "0"]]}
  ],
  "paired_spaces": [
    {"name": "I2", "dim": 2, "dual_dim": 2, "backend": "exact",
     "pairing": [["1", "0"], ["0", "1"]]}
  ],
  "maps": [
    {"name": "f", "from": "X", "to": "Y", "assignment": {"a": "c", "b": "c"}}
  ],
  "curves": [
    {"name": "gam", "dim": 2, "coeffs": [[0, 0, 1], [0, 0, 0, 1]]}
  ],
  "vector_fns": [
    {"name": "fX", "space": "X", "codomain": "I2",
     "table": {"a": ["1", "0"], "b": ["0", "1"]}}
  ],
  "grids": [
    {"name": "g1", "points": [[0.0], [0.25], [0.5]]}
  ],
  "tests": [
    {"name": "tf", "exprs": ["x1", "x1^2"]}
  ]
})";

} // namespace

TEST_CASE("usage errors exit 1 and print usage to stderr") {
    CHECK(run({}).exit == 1);
    CHECK(run({"frobnicate"}).exit == 1);
    CHECK(run({"measure"}).exit == 1);                       // missing subcommand
    CHECK(run({"measure", "tv"}).exit == 1);                 // missing --measure
    CHECK(run({"laws", "monad", "--cases", "minus-one"}).exit == 1);
    CHECK(run({"laws", "nosuchsuite", "--cases", "1"}).exit == 1);
    CHECK(run({"laws", "monad", "--seed", "1", "--seed", "2"}).exit == 1);
    RunResult r = run({"bogus"});
    CHECK(r.out.empty());
    CHECK(r.err.find("usage:") != std::string::npos);
    CHECK(run({"help"}).exit == 0);
}

TEST_CASE("schema and expression errors exit 2") {
    fs::path bad_json = write_temp("bad_json", "{ not json");
    CHECK(run({"measure", "tv", "--measure", "mu", "--in", bad_json.string()}).exit == 2);

    fs::path dup = write_temp("dup", R"({"spaces": [
        {"name": "X", "points": [{"label": "a"}]},
        {"name": "X", "points": [{"label": "a"}]}]})");
    CHECK(run({"chu", "free", "--space", "X", "--in", dup.string()}).exit == 2);

    fs::path unknown_key = write_temp("unknown_key", R"({"speces": []})");
    CHECK(run({"chu", "free", "--space", "X", "--in", unknown_key.string()}).exit == 2);

    fs::path dangling = write_temp("dangling", R"({"measures": [
        {"name": "mu", "space": "nowhere", "atoms": []}]})");
    CHECK(run({"measure", "tv", "--measure", "mu", "--in", dangling.string()}).exit == 2);

    fs::path bad_rat = write_temp("bad_rat", R"({"spaces": [
        {"name": "X", "points": [{"label": "a", "coords": ["1/0"]}]}]})");
    CHECK(run({"chu", "free", "--space", "X", "--in", bad_rat.string()}).exit == 2);

    fs::path ws = write_temp("ws_expr", kWorkspace);
    // expression problems in a referenced test family surface at use time
    for (const char* expr : {"sin(", "x3", "foo(x1)"}) {
        fs::path vf = write_temp("vf", std::string(R"({"vector_fns": [
            {"name": "g", "space": "Phi", "exprs": [")") + expr + "\"]}]}");
        RunResult r = run({"integrate", "--measure", "unif", "--fn", "g",
                           "--in", ws.string(), "--in", vf.string()});
        CHECK(r.exit == 2);
    }
}

TEST_CASE("domain errors exit 3") {
    fs::path singular = write_temp("singular", R"({"paired_spaces": [
        {"name": "S", "dim": 2, "dual_dim": 2, "pairing": [["1", "2"], ["2", "4"]]}]})");
    CHECK(run({"chu", "dual", "--pair", "S", "--in", singular.string()}).exit == 3);

    fs::path bad_atom = write_temp("bad_atom", R"({
        "spaces": [{"name": "X", "points": [{"label": "a"}]}],
        "measures": [{"name": "mu", "space": "X",
                      "atoms": [{"label": "zz", "weight": "1"}]}]})");
    CHECK(run({"measure", "tv", "--measure", "mu", "--in", bad_atom.string()}).exit == 3);
}

TEST_CASE("flatten of a dirac meta-measure returns the inner measure") {
    fs::path ws = write_temp("ws_flat", kWorkspace);
    RunResult flat = run({"measure", "flatten", "--meta", "dmu", "--in", ws.string()});
    REQUIRE(flat.exit == 0);
    json j = json::parse(flat.out);
    CHECK(j["space"] == "X");
    CHECK(j["atoms"].size() == 2);
    CHECK(j["atoms"][0]["label"] == "a");
    CHECK(j["atoms"][0]["weight"] == "1/2");

    RunResult prob = run({"measure", "isprob", "--measure", "mu", "--in", ws.string()});
    REQUIRE(prob.exit == 0);
    CHECK(json::parse(prob.out)["is_probability"] == true);
}

TEST_CASE("eta on an identity pairing is the identity map") {
    fs::path ws = write_temp("ws_eta", kWorkspace);
    RunResult r = run({"chu", "eta", "--pair", "I2", "--in", ws.string()});
    REQUIRE(r.exit == 0);
    json j = json::parse(r.out);
    CHECK(j["matrix"] == json::parse(R"([["1","0"],["0","1"]])"));
    CHECK(j["adjoint"] == json::parse(R"([["1","0"],["0","1"]])"));
}

TEST_CASE("emitted measures reload as equivalent workspace entries") {
    fs::path ws = write_temp("ws_rt", kWorkspace);
    RunResult prod = run({"measure", "product", "--left", "mu", "--right", "nu",
                          "--in", ws.string()});
    REQUIRE(prod.exit == 0);
    json out = json::parse(prod.out);

    // rebuild an input document from the emitted measure and its product space
    json doc;
    doc["spaces"] = json::array(
        {json::parse(R"({"name": "X", "points": [{"label": "a"}, {"label": "b"}]})"),
         json::parse(R"({"name": "Y", "points": [{"label": "c"}, {"label": "d"}]})")});
    json prod_space;
    prod_space["name"] = out["space"];
    json pts = json::array();
    for (const auto& atom : out["atoms"]) pts.push_back({{"label", atom["label"]}});
    prod_space["points"] = pts;
    doc["spaces"].push_back(prod_space);
    json m = out;
    m["name"] = "reloaded";
    doc["measures"] = json::array({m});
    fs::path round = write_temp("ws_round", doc.dump());

    RunResult tv1 = run({"measure", "tv", "--measure", "reloaded", "--in", round.string()});
    REQUIRE(tv1.exit == 0);
    CHECK(json::parse(tv1.out)["total_variation"] == "1");

    // re-emitting the reloaded measure reproduces the original output
    RunResult again = run({"measure", "flatten", "--meta", "dmu", "--in", ws.string()});
    RunResult again2 = run({"measure", "flatten", "--meta", "dmu", "--in", ws.string()});
    CHECK(again.out == again2.out);
}

TEST_CASE("law runs are deterministic and seed 0 is the default") {
    RunResult a = run({"laws", "monad", "--cases", "5"});
    RunResult b = run({"laws", "monad", "--cases", "5", "--seed", "0"});
    RunResult c = run({"laws", "monad", "--cases", "5", "--seed", "7"});
    CHECK(a.exit == 0);
    CHECK(a.out == b.out);
    CHECK(c.exit == 0);
    // the stderr summary is a single timing line, kept off stdout
    CHECK(a.err.rfind("suite monad: 5/5 cases passed", 0) == 0);
    json j = json::parse(a.out);
    CHECK(j["suite"] == "monad");
    CHECK(j["cases"] == 5);
    CHECK(j["failures"].empty());
}
