#include "doctest.h"

#include "ahs/cli.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>

using ahs::cli::run;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
    std::string path = std::string(P_tmpdir) + "/ahs_cli_" + name;
    std::ofstream(path) << body;
    return path;
}

std::string sphere_riemann(int m) {
    nlohmann::json r = nlohmann::json::object();
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    int v = (k == j && l == i) - (k == i && l == j);
                    if (v) r[std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(i) + "," + std::to_string(j)] = std::to_string(v);
                }
    return nlohmann::json{{"m", m}, {"riemann", r}}.dump();
}

}  // namespace

TEST_CASE("cli expand") {
    auto r = run({"expand", "--order", "2", "--filter", "correction", "--format", "latex"});
    CHECK(r.code == 0);
    CHECK(r.out == "\\lambda([X_1,\\Gamma\\cdot X_2])\\,s\n");
    r = run({"expand", "--count-only", "--max-order", "6"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "full: 1, 5, 24, 134, 900, 7184\ncorrection: 0, 1, 4, 16, 67, 328\nlinear obstruction: 1, 2, 8, 30, 153, 830\n");
    r = run({"expand", "--order", "0", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["terms"].empty());
    CHECK(run({"expand", "--order", "3", "--filter", "bogus"}).code == 2);
    CHECK(run({"expand", "--order", "x"}).code == 2);
    CHECK(run({"expand", "--order", "2"}).out == run({"expand", "--order", "2"}).out);
}

TEST_CASE("cli operator") {
    auto r = run({"operator", "solve-weight", "--dim", "4", "--rep", "density", "--order", "2", "--projector", "trace"});
    CHECK(r.code == 0);
    CHECK(r.out == "w = 1\n");
    r = run({"operator", "solve-weight", "--dim", "3", "--rep", "density", "--order", "2", "--projector", "alt", "--format", "json"});
    CHECK(nlohmann::json::parse(r.out)["all"] == true);

    r = run({"operator", "check", "--dim", "4", "--rep", "density:w=-2", "--order", "3", "--projector", "sym3_0", "--format", "latex"});
    CHECK(r.code == 0);
    CHECK(r.out.find("4\\Gamma_{(ab}\\nabla_{c)_0}s") != std::string::npos);
    CHECK(r.out.find("2(\\nabla_{(a}\\Gamma_{bc)_0})") != std::string::npos);

    r = run({"operator", "check", "--dim", "4", "--rep", "density:w=0", "--order", "2", "--projector", "sym0", "--format", "json"});
    CHECK(r.code == 1);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["invariant"] == false);
    CHECK(j.contains("obstruction_witness"));

    r = run({"operator", "check", "--dim", "4", "--rep", "density:w=1", "--order", "2", "--projector", "trace", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["zero_order_coefficient"] == "1/6");

    CHECK(run({"operator", "check", "--dim", "4", "--rep", "weird", "--order", "2"}).code == 2);
    CHECK(run({"operator", "check", "--dim", "4", "--order", "2", "--projector", "nope"}).code == 2);
    CHECK(run({"operator", "check", "--family", "lagrangian", "--params", "2", "--order", "2"}).code == 2);
}

TEST_CASE("cli conformal") {
    auto r = run({"conformal", "laplacian-coefficient", "--dim", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "1/6\n");
    CHECK(run({"conformal", "laplacian-coefficient", "--dim", "6", "--format", "json"}).out.find("\"1/5\"") != std::string::npos);
    CHECK(run({"conformal", "laplacian-coefficient", "--dim", "2"}).code == 2);

    std::string sphere = temp_file("sphere.json", sphere_riemann(4));
    r = run({"conformal", "normalize", "--input", sphere, "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["unique"] == true);
    CHECK(j["deformed_trace_max_abs"] == "0/1");
    CHECK(j["gamma"][0][0] == "-1/2");
    CHECK(j["gamma"][0][1] == "0/1");

    std::string flat = temp_file("flat.json", R"({"m": 3, "ricci": [[0,0,0],[0,0,0],[0,0,0]], "scalar": "0"})");
    r = run({"conformal", "normalize", "--input", flat, "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["gamma"][1][1] == "0/1");

    std::string ric = temp_file("ric.json", R"({"m": 3, "ricci": [[2,0,0],[0,2,0],[0,0,2]], "scalar": "6"})");
    r = run({"conformal", "rho", "--input", ric, "--format", "json"});
    CHECK(nlohmann::json::parse(r.out)["gamma"][2][2] == "-1/2");

    std::string bad = temp_file("bad.json", R"({"m": 3, "ricci": 5})");
    CHECK(run({"conformal", "normalize", "--input", bad}).code == 2);
    std::string low = temp_file("low.json", R"({"m": 2, "ricci": [[0,0],[0,0]]})");
    CHECK(run({"conformal", "rho", "--input", low}).code == 2);
    CHECK(run({"conformal", "normalize", "--input", "/nonexistent/x.json"}).code == 2);
}

TEST_CASE("cli algebra info and output file") {
    auto r = run({"algebra", "info", "--family", "grassmannian", "--params", "2", "3", "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["dim"]["g-1"] == 6);
    CHECK(j["dim"]["total"] == 24);
    std::string path = std::string(P_tmpdir) + "/ahs_cli_out.txt";
    r = run({"conformal", "laplacian-coefficient", "--dim", "3", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    CHECK(line == "1/8");
    CHECK(run({}).code == 2);
    CHECK(run({"algebra", "info", "--family", "conformal", "--params", "2"}).code == 2);
}
