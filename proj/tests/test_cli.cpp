#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "json.hpp"

#ifndef CYCLOEK_BIN
#error "CYCLOEK_BIN must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = std::string(CYCLOEK_BIN) + " " + args + " 2>&1";
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = ::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int rc = ::pclose(p);
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

}  // namespace

TEST_CASE("scalar commands print reference values") {
    auto ek = run("ek 3 --digits 6");
    CHECK(ek.exit_code == 0);
    CHECK(ek.out.find("0.945497") != std::string::npos);

    auto ratio = run("ratio 71 --digits 6");
    CHECK(ratio.exit_code == 0);
    CHECK(ratio.out.find("0.497650") != std::string::npos);

    auto census = run("census 3 10");
    CHECK(census.exit_code == 0);
    CHECK(census.out.substr(0, 1) == "8");
}

TEST_CASE("usage errors exit with code 1") {
    auto bad_q = run("ek 2");
    CHECK(bad_q.exit_code == 1);
    CHECK(bad_q.out.find("odd prime") != std::string::npos);

    auto no_sub = run("");
    CHECK(no_sub.exit_code == 1);

    auto bad_sub = run("frobnicate 3");
    CHECK(bad_sub.exit_code == 1);

    auto bad_pmax = run("sq 101 --pmax 100");
    CHECK(bad_pmax.exit_code == 1);
}

TEST_CASE("computation refusals exit with code 2") {
    auto too_big = run("ekest 3 400000001");  // x/q > 1e8
    CHECK(too_big.exit_code == 2);
}

TEST_CASE("deterministic output across runs and thread counts") {
    auto a = run("table 30 --format csv");
    auto b = run("table 30 --format csv");
    auto c = run("table 30 --format csv --threads 1");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out.rfind("q,S_q,qS_q,gamma_q,gamma_q_over_log_q,ratio\n", 0) == 0);
}

TEST_CASE("json output round-trips") {
    auto r = run("table 20 --format json");
    REQUIRE(r.exit_code == 0);
    std::size_t pos = 0, rows = 0;
    while (pos < r.out.size()) {
        std::size_t eol = r.out.find('\n', pos);
        if (eol == std::string::npos) break;
        std::string line = r.out.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        ++rows;
        CHECK(j.contains("q"));
        CHECK(j.contains("S_q"));
        CHECK(j.contains("qS_q"));
        CHECK(j.contains("gamma_q"));
        CHECK(j.contains("gamma_q_over_log_q"));
        CHECK(j.contains("ratio"));
        CHECK(j.contains("diagnostics"));
        // parse(print(x)) == x in the emitted double domain
        auto round = nlohmann::json::parse(j.dump());
        CHECK(round == j);
    }
    CHECK(rows == 7);  // odd primes up to 20

    auto ek = run("ek 5 --format json");
    REQUIRE(ek.exit_code == 0);
    auto j = nlohmann::json::parse(ek.out);
    CHECK(j["q"] == 5);
    CHECK(std::abs(j["gamma_q"].get<double>() - 1.720624) < 1e-6);
}

TEST_CASE("warm cache reruns are byte-identical") {
    auto dir = std::filesystem::temp_directory_path() /
               ("cycloek_cli_cache_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::string flag = " --cache " + dir.string();
    auto cold = run("table 40 --format csv" + flag);
    auto warm = run("table 40 --format csv" + flag);
    CHECK(cold.exit_code == 0);
    CHECK(warm.exit_code == 0);
    CHECK(cold.out == warm.out);
    CHECK(std::filesystem::exists(dir / "q37.row"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("scan command reports the known hit") {
    auto r = run("scan 964477890 964477910 60 1.0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("q=964477901") != std::string::npos);
    CHECK(r.out.find("2,6,8,12,18,20,26,30,36") != std::string::npos);
}

TEST_CASE("greedy command") {
    auto r = run("greedy --target-sum 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("i0=2089 a=18932") != std::string::npos);
    auto c = run("greedy --count 10");
    CHECK(c.out.find("0 2 6 8 12 18 20 26 30 32") != std::string::npos);
    auto neither = run("greedy");
    CHECK(neither.exit_code == 1);
}
