#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + ELLAX_BIN + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_config(const std::string& name, const json& j) {
    const std::string path = std::string(TEST_SCRATCH) + "/" + name;
    std::ofstream(path) << j.dump(2);
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json small_config() {
    return json::parse(R"({
        "p": 0.1, "q": 0.08, "m": 0, "n": 1, "seed": 17,
        "u": [0.40, 0.50, 0.45, -0.35, {"abs": 0.30, "arg": 0.7}],
        "v": {"kind": "plain", "value": {"abs": 0.5, "arg": 0.3}}
    })");
}

} // namespace

TEST_CASE("eval theta at a zero") {
    const Run r = run("eval theta --z 1,0 --config " + write_config("theta.json", small_config()));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["re"] == 0.0);
    CHECK(j["im"] == 0.0);
    CHECK(j.contains("est_error"));
}

TEST_CASE("eval selberg agrees with the closed form") {
    const std::string cfg = write_config("selberg.json", small_config());
    const Run a = run("eval selberg --config " + cfg), b = run("eval selberg-closed --config " + cfg);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    const json ja = json::parse(a.out), jb = json::parse(b.out);
    const double dre = ja["re"].get<double>() - jb["re"].get<double>();
    const double dim = ja["im"].get<double>() - jb["im"].get<double>();
    const double scale = std::hypot(jb["re"].get<double>(), jb["im"].get<double>());
    CHECK(std::hypot(dre, dim) <= 1e-10 * scale);
    CHECK(ja["est_error"].get<double>() < 1e-10 * scale);
}

TEST_CASE("eval F and Fplus") {
    const std::string cfg = write_config("f.json", small_config());
    CHECK(run("eval F --z 0.3,0.2 --config " + cfg).code == 0);
    CHECK(run("eval Fplus --z 0.3,0.2 --config " + cfg).code == 0);
    CHECK(run("eval F --config " + cfg).code == 2);
}

TEST_CASE("a gamma pole is a numeric error naming (i,j)") {
    const Run r = run("eval gamma --z 1,0 --config " + write_config("pole.json", small_config()));
    CHECK(r.code == 3);
    CHECK(r.out.find("i=0, j=0") != std::string::npos);
}

TEST_CASE("an unbalanced configuration is a configuration error") {
    json j = small_config();
    j["u"].push_back(0.5);
    const Run r = run("verify beta --config " + write_config("unbalanced.json", j));
    CHECK(r.code == 2);
    CHECK(r.out.find("balancing violated") != std::string::npos);
}

TEST_CASE("other configuration errors") {
    CHECK(run("verify nope --config " + write_config("ok.json", small_config())).code == 2);
    CHECK(run("verify beta --config /nonexistent/config.json").code == 2);
    CHECK(run("verify beta --config " + write_config("ok2.json", small_config()), "ELLAX_THREADS=zero").code == 2);
    json j = small_config();
    j["flavour"] = "x";
    CHECK(run("verify beta --config " + write_config("unknown.json", j)).code == 2);
}

TEST_CASE("a failed check exits with 1") {
    json j = small_config();
    j["samples"] = 20;
    j["tolerance"] = {{"kernel", 1e-30}};
    const Run r = run("verify kernel --config " + write_config("strict.json", j));
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    json j = small_config();
    j["samples"] = 50;
    j["suites"] = {{"beta", {{"samples", 2}}}};
    const std::string cfg = write_config("repro.json", j);
    const std::string a = std::string(TEST_SCRATCH) + "/a.json", b = std::string(TEST_SCRATCH) + "/b.json";
    REQUIRE(run("verify beta --config " + cfg + " --out " + a, "ELLAX_THREADS=1").code == 0);
    REQUIRE(run("verify beta --config " + cfg + " --out " + b, "ELLAX_THREADS=4").code == 0);
    CHECK(slurp(a) == slurp(b));
    const json rep = json::parse(slurp(a));
    CHECK(rep["schema"] == "ellax-report/1");
    CHECK(rep["pass"] == true);
    CHECK(rep["seed"] == 17);
    CHECK(rep["config"]["p"] == 0.1);
    CHECK(rep.contains("tool"));
    for (const json& c : rep["checks"])
        for (const char* key : {"name", "residual", "tolerance", "pass", "N_used", "seconds"})
            CHECK(c.contains(key));
    REQUIRE(run("verify beta --seed 99 --config " + cfg + " --out " + b).code == 0);
    CHECK(json::parse(slurp(b))["seed"] == 99);
}

TEST_CASE("lax-A at m = 1, n = 1 reports every special value") {
    const json j = json::parse(R"({
        "p": 0.05, "q": 0.3, "m": 1, "n": 1, "seed": 5,
        "u": [0.45, {"abs": 0.2, "arg": 0.4}, 0.35, -0.4, {"abs": 0.27, "arg": 2.0}, 0.37, {"abs": 0.36, "arg": -1.1}],
        "v": {"kind": "plain", "value": {"abs": 0.5, "arg": 0.3}},
        "w": {"kind": "hatted", "value": {"abs": 0.6, "arg": -0.8}}
    })");
    const Run r = run("verify lax-A --config " + write_config("laxa.json", j));
    REQUIRE(r.code == 0);
    const json rep = json::parse(r.out);
    int special = 0;
    for (const json& c : rep["checks"])
        if (c["name"].get<std::string>().rfind("special:", 0) == 0)
            ++special;
    CHECK(special == 2 * (2 * 1 + 6) + 4);
}

TEST_CASE("autobalance prints the completed configuration") {
    const Run r = run("autobalance --config " + write_config("ab.json", small_config()));
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["u"].size() == 6);
}

TEST_CASE("the bundled default configuration loads") {
    const Run r = run("eval selberg-closed");
    CHECK(r.code == 0);
}
