#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

// End-to-end checks of the installed binary: exit-code contract and byte
// reproducibility of seeded reports. UQCM_CLI_PATH is injected by CMake.

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(UQCM_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), std::move(out)};
}

std::string write_temp(const char* name, const char* text) {
    std::string path = std::string("cli_fixture_") + name;
    std::ofstream f(path);
    f << text;
    return path;
}

}  // namespace

TEST_CASE("exit codes: pass, fail and malformed input") {
    std::string good = write_temp("good.json",
        R"({"version":1,"qubits":2,"gates":[{"kind":"H","targets":[0]},
            {"kind":"CZ","targets":[0,1]}]})");
    std::string bad = write_temp("bad.json",
        R"({"version":1,"qubits":2,"gates":[{"kind":"H","targets":[-1]}]})");
    std::string rep3 = write_temp("rep3.json",
        R"({"n":3,"stabilizers":["ZZI","IZZ"],"logical_x":"XXX","logical_z":"ZII"})");
    std::string zerr = write_temp("zerr.json", R"({"errors":["III","ZII"]})");

    // pass: 0
    CHECK(run("equiv --circuit " + good + " --models circuit,mps --tol 1e-9").exit_code == 0);
    CHECK(run("simulate --circuit " + good).exit_code == 0);
    CHECK(run("check-code --code " + rep3 + " --errors single-x").exit_code == 0);
    CHECK(run("demo --seed 5").exit_code == 0);

    // check failure: 1
    CHECK(run("check-code --code " + rep3 + " --errors " + zerr).exit_code == 1);

    // malformed input or usage: 2
    CHECK(run("simulate --circuit " + bad).exit_code == 2);
    CHECK(run("simulate --circuit does_not_exist.json").exit_code == 2);
    CHECK(run("simulate").exit_code == 2);
    CHECK(run("equiv --circuit " + good + " --models bogus").exit_code == 2);
}

TEST_CASE("seeded invocations are byte reproducible") {
    std::string good = write_temp("ghz.json",
        R"({"version":1,"qubits":3,"gates":[{"kind":"H","targets":[0]},
            {"kind":"CNOT","targets":[0,1]},{"kind":"CNOT","targets":[1,2]}]})");

    std::string htcz = write_temp("htcz.json",
        R"({"version":1,"qubits":2,"gates":[{"kind":"H","targets":[0]},
            {"kind":"T","targets":[1]},{"kind":"CZ","targets":[0,1]}]})");
    const std::vector<std::string> invocations{
        "equiv --circuit " + good + " --models circuit,mps,mbqc,fkch --seed 42",
        "qsvt --count 10 --seed 9",
        "demo --seed 7",
        "convert --circuit " + htcz + " --to program"};
    for (const std::string& args : invocations) {
        RunResult a = run(args);
        RunResult b = run(args);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("reports are scriptable JSON with --pretty variants") {
    std::string good = write_temp("one.json",
        R"({"version":1,"qubits":1,"gates":[{"kind":"H","targets":[0]}]})");
    RunResult compact = run("simulate --circuit " + good);
    RunResult pretty = run("simulate --circuit " + good + " --pretty");
    CHECK(compact.out.find("\"command\":\"simulate\"") != std::string::npos);
    CHECK(pretty.out.find("  \"command\"") != std::string::npos);
    CHECK(compact.out.size() < pretty.out.size());
}

TEST_CASE("qsvt subcommand verifies against the oracle") {
    RunResult r = run("qsvt --dim 3 --length 6 --count 15 --seed 31");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\":true") != std::string::npos);
}
