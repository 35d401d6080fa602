#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ovc/cli.hpp"

using namespace ovc;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

static RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

TEST_CASE("apply composes operator words right to left") {
    RunResult r = run_cli({"apply", "--op", "D", "--graph", "(1,2)", "--format", "json"});
    CHECK(r.exit_code == 0);
    Polynomial p = polynomial_from_wire_json(
        nlohmann::ordered_json::parse(r.out)["polynomial"]);
    CHECK(p == parse_polynomial("2(1,2)^2 - 8(1,2)(2,3) + 6(1,2)(3,4)"));

    RunResult word = run_cli({"apply", "--op", "Cdd", "--graph", "(1,2)", "--format", "json"});
    CHECK(nlohmann::ordered_json::parse(word.out)["polynomial"] ==
          nlohmann::ordered_json::parse(r.out)["polynomial"]);

    RunResult text = run_cli({"apply", "--op", "d", "--graph", "(1,2)"});
    CHECK(text.exit_code == 0);
    CHECK(text.out == "2 (1,2)(1) - 2 (1,2)(3)\n");
}

TEST_CASE("apply reports engine errors on the error stream with exit 1") {
    RunResult r = run_cli({"apply", "--op", "C", "--graph", "(1)(2)(3)"});
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("odd leg count") != std::string::npos);

    RunResult bad_graph = run_cli({"apply", "--op", "d", "--graph", "(1,2"});
    CHECK(bad_graph.exit_code == 1);
    CHECK(bad_graph.err.find("error:") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({"frobnicate"}).exit_code == 2);
    CHECK(run_cli({"apply", "--graph", "(1,2)"}).exit_code == 2); // missing --op
    CHECK(run_cli({"apply", "--op", "dZ", "--graph", "(1,2)"}).exit_code == 2);
    CHECK(run_cli({"check"}).exit_code == 2); // neither --graph nor --max-edges
    CHECK(run_cli({"check", "--graph", "(1,2)", "--max-edges", "2"}).exit_code == 2);
    CHECK(run_cli({"apply", "--op", "d", "--graph", "(1,2)", "--format", "yaml"}).exit_code == 2);
    CHECK(run_cli({}).exit_code == 2);
}

TEST_CASE("check runs a single monomial or a catalog") {
    RunResult single = run_cli({"check", "--graph", "(1,2)"});
    CHECK(single.exit_code == 0);
    CHECK(single.out.find("PASS") != std::string::npos);

    RunResult catalog = run_cli({"check", "--max-edges", "2", "--format", "json"});
    CHECK(catalog.exit_code == 0);
    auto doc = nlohmann::ordered_json::parse(catalog.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["data"]["per_monomial"].size() == 4);
    CHECK(doc["data"]["per_monomial"][0]["lhs_sign_class_bound"] == 48);
}

TEST_CASE("identities exports one document per record") {
    RunResult r = run_cli({"identities", "--max-edges", "1"});
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::ordered_json::parse(r.out);
    CHECK(doc["monomial"] == "(1,2)");
    CHECK(doc["zero_sum_ok"] == true);
    CHECK(doc["delta"]["terms"].size() == 3);

    RunResult arr = run_cli({"identities", "--max-edges", "2", "--format", "json"});
    CHECK(arr.exit_code == 0);
    auto wrapped = nlohmann::ordered_json::parse(arr.out);
    CHECK(wrapped["records"].size() == 4);
}

TEST_CASE("explore probes higher orders") {
    RunResult k1 = run_cli({"explore", "--graph", "(1,2)", "--order", "1"});
    CHECK(k1.exit_code == 0);
    CHECK(k1.out.find("PASS") != std::string::npos);

    RunResult over = run_cli({"explore", "--graph", "(1,2)", "--order", "9"});
    CHECK(over.exit_code == 1);
    CHECK(over.err.find("budget") != std::string::npos);
}

TEST_CASE("verify runs the oracle suite from a config document") {
    std::string cfg_path = "/tmp/ovc_cli_config.json";
    {
        std::ofstream f(cfg_path);
        f << R"x({"N":2,"beta":0.5,"lambda_step":0.05,"beta_step":0.001,)x"
          << R"x("quad_nodes":12,"mc_samples":0,"seed":12345,"kernel":"exact"})x";
    }
    RunResult r = run_cli({"verify", "--config", cfg_path, "--format", "json"});
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::ordered_json::parse(r.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["reports"].size() == 5);
    for (const auto& rep : doc["reports"])
        if (!rep["pass"].is_null())
            CHECK(rep["pass"] == true);
    CHECK(doc["config"]["N"] == 2);

    RunResult text = run_cli({"verify", "--config", cfg_path});
    CHECK(text.exit_code == 0);
    CHECK(text.out.find("PASS effective_beta") != std::string::npos);
    CHECK(text.out.find("PASS lambda_derivative") != std::string::npos);
    CHECK(text.out.find("PASS beta_derivative") != std::string::npos);

    std::remove(cfg_path.c_str());
    RunResult missing = run_cli({"verify", "--config", "/tmp/ovc_no_such_config.json"});
    CHECK(missing.exit_code == 1);
}

TEST_CASE("identical invocations produce byte-identical output") {
    std::vector<std::string> args{"check", "--max-edges", "2", "--format", "json"};
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("--out writes the document to a file") {
    std::string path = "/tmp/ovc_cli_out.json";
    RunResult r = run_cli({"apply", "--op", "D", "--graph", "(1,2)", "--format", "json",
                           "--out", path});
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    auto doc = nlohmann::ordered_json::parse(buf.str());
    CHECK(doc["polynomial"]["terms"].size() == 3);
    std::remove(path.c_str());
}

#ifdef OVC_CLI_BINARY
TEST_CASE("installed binary behaves like the library entry point") {
    std::string cmd = std::string(OVC_CLI_BINARY) + " check --graph \"(1,2)\" > /tmp/ovc_bin_out.txt 2>&1";
    int status = std::system(cmd.c_str());
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    std::ifstream f("/tmp/ovc_bin_out.txt");
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str().find("PASS") != std::string::npos);
    std::remove("/tmp/ovc_bin_out.txt");
}
#endif
