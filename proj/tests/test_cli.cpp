#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "besselint/harness.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;  // stdout
    std::string err;  // stderr
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_stdout.tmp";
    const std::string err_path = "cli_stderr.tmp";
    const std::string cmd =
        std::string(CLI_BINARY_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

}  // namespace

TEST_CASE("eval cross-checks the closed form at gamma = 1") {
    auto r = run_cli("eval --nu 1 --gamma 1 --x 2 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    const double quad = j["results"]["f_quadrature"]["log_magnitude"].get<double>();
    const double closed = j["results"]["f_closed_form_gamma1"]["log_magnitude"].get<double>();
    CHECK(std::abs(quad - closed) < 1e-9);
    CHECK(j["results"]["f_quadrature"]["sign"].get<int>() == 1);
}

TEST_CASE("eval at x = 0 reports an exact zero") {
    auto r = run_cli("eval --nu 0.5 --gamma 0.5 --x 0 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"]["f_quadrature"]["sign"].get<int>() == 0);
    CHECK(j["results"]["f_quadrature"]["decimal"].get<double>() == 0.0);
}

TEST_CASE("eval rejects out-of-domain order with the named constraint") {
    auto r = run_cli("eval --nu -0.6 --gamma 0.5 --x 1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("nu > -1/2") != std::string::npos);
}

TEST_CASE("verify default run reports the known defective bound") {
    auto r = run_cli("verify --out verify_report.tmp");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("L-INEQB5") != std::string::npos);
    // no other bound is listed as violating
    auto j = nlohmann::json::parse(slurp("verify_report.tmp"));
    std::remove("verify_report.tmp");
    CHECK(j["total_violations"].get<int>() == 3);
    for (const auto& pb : j["per_bound"])
        if (pb["bound_id"].get<std::string>() != "L-INEQB5")
            CHECK(pb["violations"].empty());
}

TEST_CASE("verify on a clean sub-grid exits 0") {
    auto r = run_cli(
        "verify --bounds U-GAU2,L-INEQB4 --nu-grid 0.5,1 --gamma-grid 0.25 "
        "--x-grid 1,10 --out verify_clean.tmp");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(slurp("verify_clean.tmp"));
    std::remove("verify_clean.tmp");
    CHECK(j["clean"].get<bool>());
    CHECK(j["total_points"].get<int>() == 8);
}

TEST_CASE("verify with an inverted-side registry exits 1") {
    auto r = run_cli(
        "verify --invert --bounds U-GAU2 --nu-grid 1 --gamma-grid 0.25 "
        "--x-grid 5,50 --out verify_inv.tmp");
    std::remove("verify_inv.tmp");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("U-GAU2") != std::string::npos);
}

TEST_CASE("verify config file drives the sweep") {
    {
        std::ofstream cfg("verify_cfg.tmp");
        cfg << "# restricted run\n"
            << "bounds = L-OLD\n"
            << "nu_grid = 1\n"
            << "gamma_grid = 0.5\n"
            << "x_grid = 1, 10\n"
            << "format = csv\n"
            << "out = verify_cfg_out.tmp\n";
    }
    auto r = run_cli("verify --config verify_cfg.tmp");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp("verify_cfg_out.tmp");
    std::remove("verify_cfg.tmp");
    std::remove("verify_cfg_out.tmp");
    CHECK(csv.rfind("bound_id,", 0) == 0);
    CHECK(csv.find("L-OLD,") != std::string::npos);

    auto bad = run_cli("verify --x-grid ,");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("tables subcommand emits the published matrices") {
    auto r1 = run_cli("tables 1 csv");
    REQUIRE(r1.exit_code == 0);
    // first data cell of the first data row
    std::istringstream in(r1.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    // row = nu,gamma,cell...
    auto p1 = row.find(','), p2 = row.find(',', p1 + 1), p3 = row.find(',', p2 + 1);
    CHECK(std::stod(row.substr(p2 + 1, p3 - p2 - 1)) == doctest::Approx(0.2563));

    auto r2 = run_cli("tables 2 csv");
    REQUIRE(r2.exit_code == 0);
    // row (nu=1, gamma=0.25) is the first data row; x=100 is the last column
    std::istringstream in2(r2.out);
    std::getline(in2, header);
    std::getline(in2, row);
    CHECK(std::stod(row.substr(row.rfind(',') + 1)) == doctest::Approx(0.0068));

    CHECK(run_cli("tables 3").exit_code == 2);
}

TEST_CASE("tables csv round-trips the in-memory matrix") {
    auto r = run_cli("tables 1 csv");
    REQUIRE(r.exit_code == 0);
    besselint::TableSpec spec;
    spec.which = 1;
    const auto expected = besselint::make_table(spec);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);  // header
    for (const auto& row : expected) {
        REQUIRE(std::getline(in, line));
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');  // nu
        std::getline(cells, cell, ',');  // gamma
        for (double v : row) {
            REQUIRE(std::getline(cells, cell, ','));
            CHECK(std::stod(cell) == v);  // exact: both sides 4-dp rounded
        }
    }
}

TEST_CASE("limits subcommand passes") {
    auto r = run_cli("limits --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["all_ok"].get<bool>());
    CHECK(j["checks"].size() == 4);
}

TEST_CASE("bounds subcommand lists and evaluates") {
    auto r = run_cli("bounds --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() == 17);

    auto r2 = run_cli("bounds --id U-GAU2 --nu 1 --gamma 0.5 --x 10 --format json");
    REQUIRE(r2.exit_code == 0);
    auto j2 = nlohmann::json::parse(r2.out);
    REQUIRE(j2.size() == 1);
    CHECK(j2[0]["valid"].get<bool>());
    CHECK(j2[0]["value"]["sign"].get<int>() == 1);

    auto r3 = run_cli("bounds --id L-INEQB3 --nu 1 --gamma 0.5 --x 10 --format json");
    REQUIRE(r3.exit_code == 0);
    auto j3 = nlohmann::json::parse(r3.out);
    CHECK_FALSE(j3[0]["valid"].get<bool>());
    CHECK(j3[0]["violated_constraint"].get<std::string>().find("3/2") !=
          std::string::npos);
}

TEST_CASE("output is deterministic across repeated runs") {
    auto a = run_cli("tables 2 csv");
    auto b = run_cli("tables 2 csv");
    CHECK(a.out == b.out);
    auto c = run_cli("eval --nu 2.5 --gamma 0.75 --x 42 --format json");
    auto d = run_cli("eval --nu 2.5 --gamma 0.75 --x 42 --format json");
    CHECK(c.out == d.out);
}
