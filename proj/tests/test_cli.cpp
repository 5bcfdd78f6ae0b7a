#include "corpus.hpp"
#include "doctest.h"
#include "prodring/pipeline.hpp"
#include "run_cli.hpp"

using namespace prodring;

namespace {

const std::string kExe = PRODRING_CLI;

int run(const std::string& args, std::string& out) { return cli::run(kExe + " " + args, out); }

}  // namespace

TEST_CASE("reduce prints the output and its validity") {
    std::string out;
    REQUIRE(run("reduce " + cli::quoted("Prod(k,1,n,4) * Prod(k,1,n,2)^(-1)"), out) == 0);
    CHECK(out.rfind("Prod(k,1,n,2)\n", 0) == 0);
    CHECK(out.find("valid for n >= 0") != std::string::npos);
    CHECK(out.find("y1_1 = Prod(k,1,n,2)") != std::string::npos);
}

TEST_CASE("zerotest") {
    std::string out;
    REQUIRE(run("zerotest " + cli::quoted("Prod(k,1,n,4) - Prod(k,1,n,2)^2"), out) == 0);
    CHECK(out == "ZERO for all n >= 0\n");
    REQUIRE(run("zerotest " + cli::quoted("Prod(k,1,n,4) - Prod(k,1,n,2)"), out) == 0);
    CHECK(out == "NONZERO\n");
}

TEST_CASE("eval") {
    std::string out;
    REQUIRE(run("eval --from 0 --to 5 " + cli::quoted("Prod(k,1,n,-1)"), out) == 0);
    CHECK(out == "1\n-1\n1\n-1\n1\n-1\n");
}

TEST_CASE("exit codes") {
    std::string out;
    CHECK(run("reduce " + cli::quoted("Prod(k,1,n,"), out) == 2);
    CHECK(run("reduce " + cli::quoted("Prod(k,1,n,k-3)"), out) == 2);
    CHECK(run("reduce --max-relation-exponent 16 " + cli::quoted("Prod(k,1,n,1+sqrt(2)) * Prod(k,1,n,(3+2*sqrt(2))^20)"), out) == 3);
    CHECK(run("reduce --precision 8 " + cli::quoted("Prod(k,1,n,2)"), out) != 0);
    CHECK(run("frobnicate", out) != 0);
}

TEST_CASE("json output re-parses to the same sequence") {
    for (const auto& gl : corpus::golden()) {
        std::string out;
        REQUIRE(run("reduce --json " + cli::quoted(gl.text), out) == 0);
        const auto j = nlohmann::json::parse(out);
        const ProdExprAst back = from_json(j);
        const long d = j.at("delta").get<long>();
        CHECK_MESSAGE(oracle_eval_range(back, d, d + 20) == oracle_eval_range(parse(gl.text), d, d + 20), gl.name);
    }
}

TEST_CASE("file input and indep") {
    std::string out;
    REQUIRE(run("indep -f " + std::string(CORPUS_DIR) + "/running.txt", out) == 0);
    CHECK(out.find("hypergeometric bases shift-coprime: yes") != std::string::npos);
    CHECK(out.find("geometric bases relation-free: yes") != std::string::npos);
}
