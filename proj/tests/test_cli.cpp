#include <json.hpp>

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" ORTHENT_CLI "' " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    return out;
}

} // namespace

TEST_CASE("entropy csv for chebyshev") {
    const auto r = run("entropy --weight '{\"kind\":\"chebyshev\"}' --n 1..5");
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 6);
    CHECK(ls[0].rfind("n,E,F,G", 0) == 0);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto f = fields(ls[i]);
        CHECK(std::stoi(f[0]) == static_cast<int>(i));
        CHECK(std::stod(f[1]) == doctest::Approx(std::log(2.0) - 1.0).epsilon(1e-11));
    }
}

TEST_CASE("bernstein F column") {
    const auto r = run("entropy --weight '{\"kind\":\"bernstein\",\"S\":[5,-4]}' --n 1,3,8");
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        CHECK(std::stod(fields(ls[i])[2]) == doctest::Approx(std::log(2.0) - 1.0).epsilon(1e-10));
    }
}

TEST_CASE("invalid weights exit with status 2") {
    const auto r = run("entropy --weight '{\"kind\":\"jacobi\",\"alpha\":-2,\"beta\":0}' --n 1..3");
    CHECK(r.status == 2);
    CHECK(r.out.find("error[integrability]") != std::string::npos);
    const auto bad = run("entropy --weight '{\"kind\":' --n 1");
    CHECK(bad.status == 2);
    CHECK(bad.out.find("error[invalid_spec]") != std::string::npos);
    CHECK(run("entropy --weight '{\"kind\":\"chebyshev\"}' --M 1.2").status == 2);
    CHECK(run("entropy --weight '{\"kind\":\"chebyshev\"}' --n 300").status == 2);
    CHECK(run("frobnicate").status == 2);
}

TEST_CASE("exhausted panel budget exits with status 3") {
    const auto r = run("entropy --weight '{\"kind\":\"jacobi\",\"alpha\":0.5,\"beta\":0}' --n 6", "ORTHENT_MAX_PANELS=1");
    CHECK(r.status == 3);
    CHECK(r.out.find("error[budget_exceeded]") != std::string::npos);
}

TEST_CASE("output is deterministic") {
    const std::string args = "entropy --weight '{\"kind\":\"jacobi\",\"alpha\":0.5,\"beta\":-0.3}' --n 1..12";
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("json output parses") {
    const auto r = run("asymptotics --weight '{\"kind\":\"jacobi\",\"alpha\":0,\"beta\":0}' --n 4,8 --format json");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["n"] == 4);
    CHECK(j[1]["l2_dev"].get<double>() < j[0]["l2_dev"].get<double>());
}

TEST_CASE("bernstein and conditions commands") {
    const auto b = run("bernstein --S '[5,-4]'");
    REQUIRE(b.status == 0);
    CHECK(b.out.find("roots: 2") != std::string::npos);
    CHECK(b.out.find("q0: 1.15470053837925") != std::string::npos);
    CHECK(run("bernstein --S '[1,-1]'").status != 0);

    const auto c = run("conditions --weight '{\"kind\":\"chebyshev\"}' --n 1..4 --epsilon 0.5 --format json");
    REQUIRE(c.status == 0);
    const auto j = nlohmann::json::parse(c.out);
    CHECK(j["supF_pow"].get<double>() == doctest::Approx(1.2004218).epsilon(1e-6));
    CHECK(j["divergent"] == false);
}
