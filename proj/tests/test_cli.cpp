#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "latcount/instance.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(LATCOUNT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::filesystem::path write_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

const std::string kKnapsack = R"({"A": [[1, 2]], "name": "knapsack"})";
const std::string kTwoRow = R"({"A": [[1, 0, 1], [0, 1, 1]]})";

} // namespace

TEST_CASE("parse_instance accepts and validates instance documents") {
    using namespace latcount;

    Instance one = parse_instance_text(R"({"A": [[1, 2]]})");
    CHECK(one.a.rows() == 1);
    CHECK(one.a.cols() == 2);
    CHECK(one.a.at(0, 1) == 2);

    Instance two = parse_instance_text(R"({"A": [[1,0,1],[0,1,1]], "name": "planar"})");
    CHECK(two.a.rows() == 2);
    CHECK(two.a.cols() == 3);
    CHECK(two.name == "planar");

    // entries beyond 64 bits ride in as decimal strings
    Instance big = parse_instance_text(R"({"A": [["123456789012345678901", 1]]})");
    CHECK(big.a.at(0, 0) == Int("123456789012345678901"));

    CHECK_THROWS_AS(parse_instance_text(R"({"A": [[1,1],[2,2]]})"), RankError);
    CHECK_THROWS_AS(parse_instance_text(R"({"A": [[1.5, 2]]})"), ParseError);
    CHECK_THROWS_AS(parse_instance_text(R"({"A": [[1, 2], [3]]})"), ParseError);
    CHECK_THROWS_AS(parse_instance_text(R"({"B": [[1, 2]]})"), ParseError);

    // malformed JSON reports a line and column
    try {
        parse_instance_text("{\n  \"A\": [[1, 2]\n", "file.json");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("file.json:") != std::string::npos);
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
}

TEST_CASE("count on the knapsack instance") {
    auto path = write_file("cli_knap.json", kKnapsack);
    auto r = run_cli("count " + path.string() + " --y 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "3\n");

    auto rd = run_cli("count " + path.string() + " --y 4 --dual");
    CHECK(rd.out == "3\n");
    auto rf = run_cli("count " + path.string() + " --y 4 --full");
    CHECK(rf.out == "3\n");
    auto rj = run_cli("count " + path.string() + " --y 4 --json");
    CHECK(rj.out == "{\"count\":3}\n");
    // non-certified path: eps must be small against the direction range
    auto ra = run_cli("count " + path.string() + " --y 4 --approx 1/1000000");
    CHECK(ra.exit_code == 0);
    CHECK(ra.out == "3\n");
    auto zero = run_cli("count " + path.string() + " --y -3");
    CHECK(zero.exit_code == 0);
    CHECK(zero.out == "0\n");
}

TEST_CASE("hfunc evaluates and dumps terms") {
    auto path = write_file("cli_knap2.json", kKnapsack);
    auto r = run_cli("hfunc " + path.string() + " --y 4 --z 1/2,1/3");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "37/144\n");

    auto rj = run_cli("hfunc " + path.string() + " --y 4 --z 1/2,1/3 --json");
    CHECK(rj.out == "{\"value\":\"37/144\"}\n");

    auto rs = run_cli("hfunc " + path.string() + " --y 4 --symbolic");
    CHECK(rs.exit_code == 0);
    CHECK(rs.out.find("z^[4,0]") != std::string::npos);
    CHECK(rs.out.find("(1 - z^[-2,1])") != std::string::npos);
}

TEST_CASE("bases listing") {
    auto path = write_file("cli_knap3.json", kKnapsack);
    auto r = run_cli("bases " + path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "sigma=[1] mu=1 nu[2]=1\nsigma=[2] mu=2 nu[1]=2\n");
}

TEST_CASE("oracle listing") {
    auto path = write_file("cli_knap4.json", kKnapsack);
    auto r = run_cli("oracle " + path.string() + " --y 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "[0,2]\n[2,1]\n[4,0]\n");
}

TEST_CASE("table build and table-driven count agree with the direct count") {
    auto path = write_file("cli_tworow.json", kTwoRow);
    auto table = std::filesystem::temp_directory_path() / "cli_tworow_table.json";
    auto rt = run_cli("table " + path.string() + " --y 2,1 --out " + table.string());
    CHECK(rt.exit_code == 0);

    for (std::string y : {"2,1", "3,2", "5,3"}) {
        auto direct = run_cli("count " + path.string() + " --y " + y);
        auto tabled = run_cli("count " + path.string() + " --y " + y + " --table " + table.string());
        CHECK(direct.exit_code == 0);
        CHECK(tabled.exit_code == 0);
        CHECK(direct.out == tabled.out);
    }

    // y outside the chamber closure is a domain error
    auto wrong = run_cli("count " + path.string() + " --y 0,5 --table " + table.string());
    CHECK(wrong.exit_code == 3);
}

TEST_CASE("verify and expand succeed on good instances") {
    auto path = write_file("cli_knap5.json", kKnapsack);
    auto rv = run_cli("verify " + path.string() + " --samples 20 --seed 7");
    CHECK(rv.exit_code == 0);
    CHECK(rv.out.find("primal: 20/20") != std::string::npos);
    CHECK(rv.out.find("dual: 20/20") != std::string::npos);
    CHECK(rv.out.find("all pipelines agree") != std::string::npos);

    auto re = run_cli("expand " + path.string() + " --z 1/2,1/3 --box 4");
    CHECK(re.exit_code == 0);
    CHECK(re.out.find("expansion verified") != std::string::npos);
}

TEST_CASE("identical invocations are byte-identical") {
    auto path = write_file("cli_tworow2.json", kTwoRow);
    std::string cmd = "verify " + path.string() + " --samples 10 --seed 99";
    auto r1 = run_cli(cmd);
    auto r2 = run_cli(cmd);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);

    auto h1 = run_cli("hfunc " + path.string() + " --y 2,1 --symbolic");
    auto h2 = run_cli("hfunc " + path.string() + " --y 2,1 --symbolic");
    CHECK(h1.out == h2.out);
}

TEST_CASE("exit codes by failure category") {
    auto bad = write_file("cli_bad.json", "{\"A\": [[1, 2]");
    CHECK(run_cli("count " + bad.string() + " --y 4").exit_code == 2);

    auto rankdef = write_file("cli_rank.json", R"({"A": [[1, 1], [2, 2]]})");
    CHECK(run_cli("count " + rankdef.string() + " --y 1,2").exit_code == 3);

    auto unbounded = write_file("cli_unbounded.json", R"({"A": [[1, -1]]})");
    CHECK(run_cli("count " + unbounded.string() + " --y 3").exit_code == 3);
    CHECK(run_cli("oracle " + unbounded.string() + " --y 3").exit_code == 3);

    CHECK(run_cli("count missing-file.json --y 1").exit_code == 2);
    CHECK(run_cli("nonsense-command").exit_code == 2);
}
