#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "qhopf/cli.hpp"

using namespace qhopf;

namespace {

std::string golden_path(const std::string& name) {
    const char* dir = std::getenv("QHOPF_GOLDEN_DIR");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("parse_spec: presets") {
    auto doc = parse_spec("[field] p=3\n[preset] name=alpha params=1\n");
    REQUIRE(doc.p == 3);
    REQUIRE(doc.hopf->dim() == 3);
    REQUIRE(check_bialgebra(*doc.hopf).all_passed());

    auto prod = parse_spec("[field] p=3\n[preset] name=alpha_product params=1,1\n");
    REQUIRE(prod.hopf->dim() == 9);
}

TEST_CASE("parse_spec: explicit algebra of k[x]/(x^2) at p = 2") {
    std::string text =
        "[field] p=2\n"
        "[algebra] dim=2\n"
        "labels 1 x\n"
        "sc 0 0 0 1\n"
        "sc 0 1 1 1\n"
        "sc 1 0 1 1\n"
        "comul 0 0 0 1\n"
        "comul 1 1 0 1\n"
        "comul 1 0 1 1\n"
        "counit 1 0\n";
    auto doc = parse_spec(text);
    REQUIRE(doc.hopf->dim() == 2);
    REQUIRE(doc.hopf->algebra()->unit() == Vec{1, 0});
    REQUIRE(check_bialgebra(*doc.hopf).all_passed());
    REQUIRE(doc.hopf->cocommutative());

    // round trip: serialize then reparse gives the same content
    auto again = parse_spec(serialize_spec(doc));
    REQUIRE(doc.same_content(again));
    REQUIRE(again.hopf->delta_table() == doc.hopf->delta_table());
}

TEST_CASE("parse_spec diagnostics") {
    // non-prime characteristic
    try {
        parse_spec("[field] p=4\n[preset] name=alpha params=1\n");
        FAIL("expected spec_error");
    } catch (const spec_error& e) {
        REQUIRE(e.line == 1);
        REQUIRE(std::string(e.what()).find("prime") != std::string::npos);
    }
    // dangling index
    try {
        parse_spec("[field] p=3\n[algebra] dim=2\nsc 0 0 5 1\ncounit 1 0\ncomul 0 0 0 1\n");
        FAIL("expected spec_error");
    } catch (const spec_error& e) {
        REQUIRE(std::string(e.what()).find("out of range") != std::string::npos);
    }
    // broken bialgebra axioms are caught at instantiation
    REQUIRE_THROWS_AS(parse_spec("[field] p=2\n[algebra] dim=2\nsc 0 0 0 1\nsc 0 1 1 1\nsc 1 0 1 1\n"
                                 "comul 0 0 0 1\ncomul 1 1 1 1\ncounit 1 0\n"),
                      spec_error);
    // both preset and algebra
    REQUIRE_THROWS_AS(parse_spec("[field] p=3\n[preset] name=alpha params=1\n[algebra] dim=2\n"),
                      spec_error);
}

TEST_CASE("parse_spec: attached associator and rmatrix") {
    std::string text =
        "[field] p=3\n"
        "[preset] name=alpha params=1\n"
        "[associator]\n"
        "0 0 0 1\n"
        "1 1 2 1\n"
        "1 2 1 1\n";
    auto doc = parse_spec(text);
    REQUIRE(doc.associator.has_value());
    REQUIRE(tensor_equal(*doc.associator, associator_phi(doc.hopf, 1)));
}

TEST_CASE("cli verify on the canonical associator") {
    auto res = cli::run({"verify", "--preset", "alpha", "--params", "1", "--p", "3"});
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.report.get("check.pentagon") == "pass");
    REQUIRE(res.report.get("verify.result") == "pass");
}

TEST_CASE("cli verify catches a failing pentagon") {
    // 1 + x (x) x (x) x is not an associator
    std::string text =
        "[field] p=3\n"
        "[preset] name=alpha params=1\n"
        "[associator]\n"
        "0 0 0 1\n"
        "1 1 1 1\n";
    std::string path = "/tmp/qhopf_bad_assoc.spec";
    {
        std::ofstream out(path);
        out << text;
    }
    auto res = cli::run({"verify", "--spec", path});
    REQUIRE(res.exit_code == 1);
    REQUIRE(res.report.get("check.pentagon") == "fail");
}

TEST_CASE("cli usage and input errors exit with code 2") {
    REQUIRE(cli::run({}).exit_code == 2);
    REQUIRE(cli::run({"frobnicate"}).exit_code == 2);
    REQUIRE(cli::run({"verify"}).exit_code == 2);
    REQUIRE(cli::run({"verify", "--preset", "alpha", "--params", "1", "--p", "4"}).exit_code == 2);
    REQUIRE(cli::run({"demo", "nonsense"}).exit_code == 2);
}

TEST_CASE("cli cohomology additive and budget exit code") {
    auto res = cli::run({"cohomology", "--degree", "3", "--preset", "alpha_product", "--params",
                         "1,1", "--p", "3"});
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.report.get("cohomology.h3.dim") == "4");
    REQUIRE(res.report.get("cohomology.h1.dim") == "2");

    auto limited = cli::run({"cohomology", "--degree", "3", "--preset", "u_abelian", "--params",
                             "3", "--p", "3", "--budget", "100"});
    REQUIRE(limited.exit_code == 3);
}

TEST_CASE("cli associator with scaling") {
    auto res = cli::run({"associator", "--s", "1", "--mu", "2", "--preset", "alpha", "--params",
                         "1", "--p", "5"});
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.report.get("associator.pentagon") == "pass");
    REQUIRE(res.report.get("associator.scaling.s_target") == "4");
    REQUIRE(res.report.get("associator.scaling.match") == "pass");
}

TEST_CASE("cli trivialize reports the obstruction for the canonical associator") {
    std::string text =
        "[field] p=3\n"
        "[preset] name=alpha params=1\n"
        "[associator]\n"
        "0 0 0 1\n"
        "1 1 2 1\n"
        "1 2 1 1\n";
    std::string path = "/tmp/qhopf_phi.spec";
    {
        std::ofstream out(path);
        out << text;
    }
    auto res = cli::run({"trivialize", "--spec", path});
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.report.get("trivialize.result") == "obstruction");
    REQUIRE(res.report.get("trivialize.obstruction.degree") == "4");
    REQUIRE(res.report.get("trivialize.obstruction.class") != "0");
}

TEST_CASE("cli determinism: identical inputs give byte-identical reports") {
    std::vector<std::string> args{"demo", "prop5_11", "--seed", "7", "--trials", "5"};
    auto a = cli::run(args);
    auto b = cli::run(args);
    REQUIRE(a.report.to_text() == b.report.to_text());
    REQUIRE(a.exit_code == b.exit_code);
}

TEST_CASE("demo reports match their golden files") {
    struct Scenario {
        const char* name;
        std::vector<std::string> args;
    };
    std::vector<Scenario> scenarios = {
        {"demo_thm5_17.txt", {"demo", "thm5_17"}},
        {"demo_remark5_9.txt", {"demo", "remark5_9"}},
        {"demo_cor2_6.txt", {"demo", "cor2_6"}},
        {"demo_prop5_11.txt", {"demo", "prop5_11", "--seed", "0", "--trials", "20"}},
    };
    for (const auto& s : scenarios) {
        auto res = cli::run(s.args);
        INFO("scenario " << s.name);
        REQUIRE(res.exit_code == 0);
        REQUIRE(res.report.to_text() == read_file(golden_path(s.name)));
    }
}
