#include "doctest.h"

#include <fstream>

#include "cli_cases.hpp"
#include "json.hpp"

using nlohmann::json;

TEST_CASE("every subcommand is deterministic and succeeds on its sample")
{
    for (const auto& c : cli_cases::all()) {
        CAPTURE(c.command);
        auto a = cli_cases::run(c.command, c.file, {"--seed", "5"});
        auto b = cli_cases::run(c.command, c.file, {"--seed", "5"});
        CHECK(a.out == b.out);
        CHECK(a.code == b.code);
        json r = json::parse(a.out);
        CHECK(r["command"] == c.command);
        CHECK(r["tool"] == "k0lat");
        CHECK(r["config"]["seed"] == 5);
        CHECK(r.contains("result"));
    }
}

TEST_CASE("iso on identical modules returns the identity")
{
    auto r = cli_cases::run("iso", "pair_same.json");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["result"]["verdict"] == "IsoConstructed");
    CHECK(j["result"]["iso"] == json::array({json::array({"1", "0"}), json::array({"0", "1"})}));
}

TEST_CASE("verdict exit codes")
{
    auto md = cli_cases::run("md-count", "q2_D2.json");
    CHECK(md.code == 0);
    json j = json::parse(md.out);
    CHECK(j["result"]["count"] == 5);
    CHECK(j["result"]["bound"] == "5");

    CHECK(json::parse(cli_cases::run("md-count", "q10_D2.json").out)["result"]["count"] == 3);
    CHECK(cli_cases::run("iso", "dedekind.json").code == 1);
    CHECK(cli_cases::run("probe", "dedekind.json").code == 0);
    CHECK(json::parse(cli_cases::run("probe", "dedekind.json").out)["result"]["verdict"] == "NecessaryConditionsPass");
    CHECK(cli_cases::run("scalar-test", "scalar_test.json").code == 1);
    CHECK(cli_cases::run("iso", "hodge_pair.json").code == 0);

    auto ns = cli_cases::run("k3-kernel", "k3_not_surjective.json");
    CHECK(ns.code == 1);
    CHECK(json::parse(ns.out)["result"]["error"]["kind"] == "NotSurjective");
    CHECK(ns.err.find("NotSurjective") != std::string::npos);

    auto cut = cli_cases::run("md-count", "q10_D2.json", {"--search-factor", "1"});
    CHECK(cut.code == 3);
    CHECK(json::parse(cut.out)["result"]["error"]["kind"] == "SearchBoundExceeded");
}

TEST_CASE("invalid input exits with 2")
{
    const std::string dir = std::string(K0LAT_TEST_DATA_DIR) + "/";
    auto write = [&](const std::string& name, const std::string& body) {
        std::ofstream(dir + name) << body;
        return name;
    };
    auto malformed = cli_cases::run("iso", write("tmp_malformed.json", "{\"version\": 1,"));
    CHECK(malformed.code == 2);
    CHECK(malformed.out.empty());
    CHECK(malformed.err.find("malformed JSON") != std::string::npos);

    CHECK(cli_cases::run("iso", write("tmp_noversion.json", "{\"order\": {\"integers\": true}}")).code == 2);
    auto missing = cli_cases::run("iso", write("tmp_missing.json", "{\"version\": 1, \"order\": {\"integers\": true}, \"X\": {\"regular\": true}}"));
    CHECK(missing.code == 2);
    CHECK(missing.err.find("\"Y\"") != std::string::npos);
    CHECK(cli_cases::run("hom", write("tmp_badint.json", "{\"version\": 1, \"order\": {\"quadratic\": [\"x\", 1]}, \"X\": {}, \"Y\": {}}")).code == 2);
    CHECK(cli_cases::run("decomp-p", "decomp_order.json", {"--prime", "4"}).code == 2);
    CHECK(cli_cases::run("iso", "no_such_file.json").code == 2);
    CHECK(cli_cases::run("iso", "pair_same.json", {"--format", "xml"}).code == 2);
    // nonassociative table
    CHECK(cli_cases::run("idempotents", write("tmp_ring.json",
                                              "{\"version\": 1, \"ring\": {\"moduli\": [\"2\", \"3\"], \"table\": [1,0,0,1,0,1,0,0], \"unit\": [1, 0]}}"))
              .code == 2);
    for (const char* f : {"tmp_malformed.json", "tmp_noversion.json", "tmp_missing.json", "tmp_badint.json", "tmp_ring.json"})
        std::remove((dir + f).c_str());

    std::ostringstream out, err;
    CHECK(k0lat::cli::run({"nonsense"}, out, err) == 2);
}

TEST_CASE("text and json carry the same verdict fields")
{
    for (const auto& c : cli_cases::all()) {
        CAPTURE(c.command);
        json j = json::parse(cli_cases::run(c.command, c.file).out);
        std::string text = cli_cases::run(c.command, c.file, {"--format", "text"}).out;
        for (const auto& [k, v] : j["result"].items()) CHECK(text.find("result." + k + ": " + v.dump() + "\n") != std::string::npos);
    }
}

TEST_CASE("seed precedence: flag, then file, then environment")
{
    json j = json::parse(cli_cases::run("probe", "dedekind.json").out);
    CHECK(j["config"]["seed"] == 7);
    j = json::parse(cli_cases::run("probe", "dedekind.json", {"--seed", "11"}).out);
    CHECK(j["config"]["seed"] == 11);
    setenv("K0LAT_SEED", "13", 1);
    CHECK(json::parse(cli_cases::run("hom", "pair_same.json").out)["config"]["seed"] == 13);
    CHECK(json::parse(cli_cases::run("probe", "dedekind.json").out)["config"]["seed"] == 7);
    unsetenv("K0LAT_SEED");
    CHECK(json::parse(cli_cases::run("hom", "pair_same.json").out)["config"]["seed"] == 0);
}

TEST_CASE("prime bound flag changes the probed primes")
{
    json a = json::parse(cli_cases::run("probe", "dedekind.json", {"--prime-bound", "10"}).out);
    CHECK(a["config"]["prime_bound"] == 10);
    json b = json::parse(cli_cases::run("probe", "dedekind.json").out);
    CHECK(a["result"]["primes"].size() < b["result"]["primes"].size());
}
