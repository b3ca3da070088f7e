// End-to-end tests that drive the installed binary. The binary path arrives
// as the single positional argument (wired up by CTest).
#define DOCTEST_CONFIG_IMPLEMENT
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string g_cli;          // path to the binary under test
std::filesystem::path g_scratch;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Run a shell command, capturing stdout+stderr and the exit code.
RunResult run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string scratch_file(const std::string& name) { return (g_scratch / name).string(); }

}  // namespace

TEST_CASE("construct then verify round-trips with exit 0") {
    const std::string file = scratch_file("d221.json");
    CHECK(run("construct --p 2 --m 2 --r 1 --output " + file).exit_code == 0);
    const RunResult v = run("verify --input " + file);
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("\"verdict\": \"pass\"") != std::string::npos);
    const RunResult t = run("verify --input " + file + " --format text");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("verdict: pass") != std::string::npos);
}

TEST_CASE("identical configuration gives byte-identical output") {
    const RunResult a = run("construct --p 3 --m 2 --r 1");
    const RunResult b = run("construct --p 3 --m 2 --r 1");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    // Verification output is equally deterministic (no timings by default).
    const std::string file = scratch_file("d321.json");
    REQUIRE(run("construct --p 3 --m 2 --r 1 --output " + file).exit_code == 0);
    const RunResult v1 = run("verify --input " + file);
    const RunResult v2 = run("verify --input " + file);
    CHECK(v1.out == v2.out);
    // Timings are opt-in and break no determinism promises.
    const RunResult vt = run("verify --input " + file + " --timings");
    CHECK(vt.exit_code == 0);
    CHECK(vt.out.find("timings_ms") != std::string::npos);
    CHECK(v1.out.find("timings_ms") == std::string::npos);
}

TEST_CASE("a corrupted export fails verification with exit 1") {
    const std::string file = scratch_file("good.json");
    REQUIRE(run("construct --p 2 --m 2 --r 1 --output " + file).exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(slurp(file));
    // Replace one member with an index that is not in the set.
    std::vector<std::int64_t> idx = doc["indices"].get<std::vector<std::int64_t>>();
    std::int64_t stranger = 1;
    while (std::find(idx.begin(), idx.end(), stranger) != idx.end()) ++stranger;
    idx[0] = stranger;
    std::sort(idx.begin(), idx.end());
    doc["indices"] = idx;
    const std::string bad = scratch_file("bad.json");
    std::ofstream(bad) << doc.dump();
    const RunResult v = run("verify --input " + bad);
    CHECK(v.exit_code == 1);
    CHECK(v.out.find("\"verdict\": \"fail\"") != std::string::npos);
    // Lower check levels reach the same verdict.
    CHECK(run("verify --input " + bad + " --check-level counts").exit_code == 1);
    CHECK(run("verify --input " + bad + " --check-level chars").exit_code == 1);
    CHECK(run("verify --input " + bad + " --fast-transform").exit_code == 1);
}

TEST_CASE("usage and configuration errors exit with 2") {
    CHECK(run("frobnicate").exit_code == 2);                       // unknown subcommand
    CHECK(run("construct --m 2 --r 1").exit_code == 2);            // missing --p
    CHECK(run("construct --p 4 --m 2 --r 1").exit_code == 2);      // p not prime
    CHECK(run("construct --p 2 --m 2 --r 5").exit_code == 2);      // r out of range
    CHECK(run("verify --input " + scratch_file("missing.json")).exit_code == 2);
    CHECK(run("construct --p 2 --m 2 --r 1 --check-level bogus").exit_code == 2);
    CHECK(run("construct --p 2 --m 2 --r 1 --basis 0 --random-subspace-seed 3").exit_code == 2);
    // A non-primitive modulus is a configuration error, reported distinctly.
    const RunResult r = run("construct --p 2 --m 2 --r 1 --modulus 1,1,1,1,1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("not primitive") != std::string::npos);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("seeded random subspaces construct verifiable sets") {
    const std::string file = scratch_file("seeded.json");
    CHECK(run("construct --p 2 --m 3 --r 2 --random-subspace-seed 11 --output " + file)
              .exit_code == 0);
    CHECK(run("verify --input " + file).exit_code == 0);
    // The export remembers the basis, and an explicit --basis reproduces it.
    nlohmann::json doc = nlohmann::json::parse(slurp(file));
    std::string basis;
    for (const auto& d : doc["subspace_basis_dlogs"]) {
        if (!basis.empty()) basis += ",";
        basis += std::to_string(d.get<std::int64_t>());
    }
    const RunResult again = run("construct --p 2 --m 3 --r 2 --basis " + basis);
    CHECK(again.exit_code == 0);
    CHECK(nlohmann::json::parse(again.out)["indices"] == doc["indices"]);
}

TEST_CASE("export re-serializes a saved set") {
    const std::string file = scratch_file("exp.json");
    REQUIRE(run("construct --p 2 --m 2 --r 1 --output " + file).exit_code == 0);
    const RunResult text = run("export --input " + file + " --format text");
    CHECK(text.exit_code == 0);
    CHECK(text.out == run("construct --p 2 --m 2 --r 1 --format text").out);
    const RunResult json = run("export --input " + file);
    CHECK(json.exit_code == 0);
    CHECK(json.out == slurp(file));
}

TEST_CASE("sweep covers the grid and reports per-row verdicts") {
    const RunResult r = run("sweep --p 2 --max-m 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const RunResult j = run("sweep --p 3 --max-m 3 --format json");
    CHECK(j.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(j.out);
    CHECK(doc["kind"] == "sweep");
    CHECK(doc["rows"].size() == 3);  // (2,1), (3,1), (3,2)
    for (const auto& row : doc["rows"]) CHECK(row["verdict"] == "pass");
}

TEST_CASE("sweep skips rows whose difference count alone is too costly") {
    // For q = 5, m = 3 both r rows have k^2 beyond the sweep budget
    // (k = 62620 and 375100); they must be skipped, not attempted.
    const RunResult j = run("sweep --p 5 --max-m 3 --check-level counts --format json");
    CHECK(j.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(j.out);
    REQUIRE(doc["rows"].size() == 3);  // (2,1), (3,1), (3,2)
    CHECK(doc["rows"][0]["verdict"] == "pass");
    for (int i : {1, 2}) {
        CHECK(doc["rows"][i]["verdict"] == "skipped");
        CHECK(doc["rows"][i]["note"] ==
              "difference-count cost k*k exceeds the sweep budget");
    }
    const RunResult t = run("sweep --p 5 --max-m 3 --check-level counts");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("skipped (count cost too large)") != std::string::npos);
}

TEST_CASE("field-info describes the tower") {
    const RunResult r = run("field-info --p 3 --m 2 --format json");
    CHECK(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["field"]["modulus"] == nlohmann::json::array({2, 1, 0, 0, 1}));
    CHECK(doc["order"] == 81);
    CHECK(doc["tower"].size() == 3);  // 3, 9, 81
}

int main(int argc, char** argv) {
    std::vector<char*> doctest_args;
    for (int i = 0; i < argc; ++i) {
        if (i > 0 && argv[i][0] != '-')
            g_cli = argv[i];
        else
            doctest_args.push_back(argv[i]);
    }
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-binary> [doctest options]\n");
        return 1;
    }
    g_scratch = std::filesystem::temp_directory_path() /
                ("pds_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(g_scratch);
    doctest::Context ctx(int(doctest_args.size()), doctest_args.data());
    const int rc = ctx.run();
    std::filesystem::remove_all(g_scratch);
    return rc;
}
