#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
};

std::string fixture(const std::string& name) { return std::string(K3SYZ_FIXTURES_DIR) + "/" + name; }

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(K3SYZ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) res.out.append(buf.data(), n);
    int status = pclose(p);
    res.code = WEXITSTATUS(status);
    return res;
}

}  // namespace

TEST_CASE("invariants on the toy example with --syzygy 3") {
    RunResult r = run_cli("invariants " + fixture("toy_line_bundle.json") + " --syzygy 3");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["chi"] == 4);
    CHECK(j["spl_dim"] == 0);
    CHECK(j["syzygy"]["invariants"]["rank"] == 2);
    CHECK(j["syzygy"]["invariants"]["c1"][0] == -1);
    CHECK(j["syzygy"]["invariants"]["c2"] == 4);
    CHECK(j["syzygy"]["spl_dim"] == 6);
    CHECK(j["syzygy"]["doubling"]["base_dim"] == 0);
    CHECK(j["syzygy"]["doubling"]["fiber_dim"] == 3);
    CHECK(j["syzygy"]["doubling"]["target_dim"] == 6);
    CHECK(j["syzygy"]["doubling"]["holds"] == true);
}

TEST_CASE("invariants on L_2 with --extension 1") {
    RunResult r = run_cli("invariants " + fixture("ln_2.json") + " --extension 1");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["chi"] == -6);
    CHECK(j["extension"]["u"] == 6);
    CHECK(j["extension"]["doubling"]["base_dim"] == 0);
    CHECK(j["extension"]["doubling"]["fiber_dim"] == 5);
    CHECK(j["extension"]["doubling"]["target_dim"] == 10);
    CHECK(j["extension"]["doubling"]["holds"] == true);
}

TEST_CASE("identity run emits chi and spl_dim only") {
    RunResult r = run_cli("invariants " + fixture("septic_line_bundle.json"));
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["chi"] == 100);
    CHECK(j["spl_dim"] == 0);
    CHECK(j["slope"]["num"] == 28);
    CHECK(j["slope"]["den"] == 1);
    CHECK(!j.contains("syzygy"));
    CHECK(!j.contains("extension"));
}

TEST_CASE("exit code 3 on precondition failures") {
    RunResult r = run_cli("invariants " + fixture("toy_line_bundle.json") + " --syzygy 2");
    CHECK(r.code == 3);
    // --formal lifts the precondition
    RunResult f = run_cli("invariants " + fixture("toy_line_bundle.json") + " --syzygy 2 --formal");
    CHECK(f.code == 0);
    RunResult v = run_cli("invariants " + fixture("ln_2.json") + " --extension 7");
    CHECK(v.code == 3);
}

TEST_CASE("flag usage errors exit with code 2") {
    CHECK(run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                  fixture("deg2_forms.json") + " --q nope --t 0")
              .code == 2);
    CHECK(run_cli("stability --surface " + fixture("fermat_quartic.json")).code == 2);  // missing --forms
}

TEST_CASE("exit code 2 on malformed input") {
    CHECK(run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                  fixture("bad_forms.json") + " --q 1 --t 0")
              .code == 2);
    CHECK(run_cli("invariants " + fixture("w2_forms.json")).code == 2);  // wrong schema
    CHECK(run_cli("ring-dim --surface " + fixture("toy_line_bundle.json") + " --t 3").code == 2);
}

TEST_CASE("stability exit codes branch on the verdict") {
    RunResult stable = run_cli("stability --surface " + fixture("fermat_quartic.json") +
                               " --forms " + fixture("deg2_forms.json"));
    CHECK(stable.code == 0);
    json js = json::parse(stable.out);
    CHECK(js["verdict"] == "CohomologicallyStable");
    CHECK(js["kernel_dims"].size() == 1);
    CHECK(js["kernel_dims"][0] == 0);
    CHECK(js["basepoint"]["status"] == "Certified");

    RunResult unstable = run_cli("stability --surface " + fixture("fermat_quartic.json") +
                                 " --forms " + fixture("unstable_deg5_forms.json"));
    CHECK(unstable.code == 10);
    json ju = json::parse(unstable.out);
    CHECK(ju["verdict"] == "Unstable");
    CHECK(ju["destabilizer"]["m"] == 1);
    CHECK(ju["destabilizer"]["sub_slope"]["num"] == -4);
    CHECK(ju["destabilizer"]["strict"] == true);
}

TEST_CASE("h0 command reports kernel dimension and provenance") {
    RunResult r = run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                          fixture("w2_forms.json") + " --q 1 --t 0");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["kernel_dim"] == 0);
    CHECK(j["backend"] == "prime-certified");
    CHECK(j["source_dim"] == 5);
    CHECK(j["target_dim"] == 100);
}

TEST_CASE("ring-dim") {
    RunResult r = run_cli("ring-dim --surface " + fixture("fermat_quartic.json") + " --t 7");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["dim"] == 100);
}

TEST_CASE("basepoints command") {
    RunResult r = run_cli("basepoints --surface " + fixture("fermat_quartic.json") + " --forms " +
                          fixture("deg2_forms.json"));
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["status"] == "Certified");
    CHECK(j["degree"] == 7);  // socle of (x^2,y^2,z^2,t^4) sits in degree 6
}

TEST_CASE("byte-identical stdout for identical input, seed, version") {
    std::string cmd = "invariants " + fixture("septic_line_bundle.json") + " --syzygy 5";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    std::string h0cmd = "h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                        fixture("deg2_forms.json") + " --q 1 --t 1 --seed 7";
    RunResult c = run_cli(h0cmd);
    RunResult d = run_cli(h0cmd);
    CHECK(c.code == 0);
    CHECK(c.out == d.out);

    std::string stab = "stability --surface " + fixture("fermat_quartic.json") + " --forms " +
                       fixture("deg2_forms.json") + " --seed 11";
    RunResult e = run_cli(stab);
    RunResult f = run_cli(stab);
    CHECK(e.out == f.out);
}

TEST_CASE("degree-3 pure powers are cohomologically stable") {
    RunResult r = run_cli("stability --surface " + fixture("fermat_quartic.json") + " --forms " +
                          fixture("deg3_forms.json"));
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["verdict"] == "CohomologicallyStable");
    CHECK(j["mu"]["num"] == -6);
    CHECK(j["schedule"].size() == 1);
    CHECK(j["schedule"][0]["twist_checked"] == 1);
}

TEST_CASE("h0 q/t range violations are precondition failures") {
    CHECK(run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                  fixture("deg2_forms.json") + " --q 9 --t 0")
              .code == 3);
    CHECK(run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                  fixture("deg2_forms.json") + " --q 1 --t -2")
              .code == 3);
}

TEST_CASE("h0 reproduces the wedge-2 vanishing of W2") {
    RunResult r = run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                          fixture("w2_forms.json") + " --q 2 --t 3");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["kernel_dim"] == 0);
    CHECK(j["source_dim"] == 200);
    CHECK(j["target_dim"] == 1010);
}

TEST_CASE("unsupported sheaf rank in the form space") {
    std::string tmp = "/tmp/k3syz_rank2.json";
    {
        std::ofstream f(tmp);
        f << R"({"degree": 7, "rank": 2, "forms": ["x^7","y^7","z^7"]})";
    }
    RunResult r = run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " + tmp +
                          " --q 1 --t 0");
    CHECK(r.code == 3);
}

TEST_CASE("dependent forms exit with code 3") {
    std::string tmp = "/tmp/k3syz_dep.json";
    {
        std::ofstream f(tmp);
        f << R"({"degree": 2, "forms": ["x^2","y^2","x^2+y^2"]})";
    }
    RunResult r = run_cli("basepoints --surface " + fixture("fermat_quartic.json") + " --forms " +
                          tmp);
    CHECK(r.code == 3);
}

TEST_CASE("matrix export writes exact rationals") {
    std::string out = "/tmp/k3syz_matrix.json";
    RunResult r = run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                          fixture("deg2_forms.json") + " --q 3 --t 0 --export-matrix " + out);
    REQUIRE(r.code == 0);
    std::ifstream f(out);
    REQUIRE(f.good());
    json m = json::parse(f);
    CHECK(m["rows"] == 30);  // C(3,2) * dim R_2
    CHECK(m["cols"] == 1);
    CHECK(m["subset_order"] == "colex");
    CHECK(m["entries"].size() == 30);
    // first block is +g2 = +z^2: a single entry 1 at the z^2 row
    int nonzero = 0;
    for (const auto& row : m["entries"])
        for (const auto& e : row)
            if (e["num"] != 0) ++nonzero;
    CHECK(nonzero == 3);
}

TEST_CASE("matrix exports are reproducible byte for byte") {
    std::string cmd = "h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                      fixture("deg2_forms.json") + " --q 2 --t 1 --export-matrix ";
    run_cli(cmd + "/tmp/k3syz_exp_a.json");
    run_cli(cmd + "/tmp/k3syz_exp_b.json");
    std::ifstream fa("/tmp/k3syz_exp_a.json"), fb("/tmp/k3syz_exp_b.json");
    std::string da((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string db((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(!da.empty());
    CHECK(da == db);
}

TEST_CASE("prime selection: explicit flag and seeded choice appear in output") {
    RunResult r = run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                          fixture("deg2_forms.json") + " --q 1 --t 1 --prime 1000003");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["prime"] == 1000003);

    RunResult bad = run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                            fixture("deg2_forms.json") + " --q 1 --t 1 --prime 1000000");
    CHECK(bad.code == 2);

    RunResult s = run_cli("h0 --surface " + fixture("fermat_quartic.json") + " --forms " +
                          fixture("deg2_forms.json") + " --q 1 --t 1 --seed 9");
    REQUIRE(s.code == 0);
    CHECK(json::parse(s.out)["prime"] != json(2305843009213693951ull));
}

TEST_CASE("custom variable names flow through the surface JSON") {
    std::string tmp = "/tmp/k3syz_vars.json";
    {
        std::ofstream f(tmp);
        f << R"({"variables": ["a","b","c","d"], "hypersurface": "a^4+b^4+c^4+d^4"})";
    }
    RunResult r = run_cli("ring-dim --surface " + tmp + " --t 4");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["dim"] == 34);
    CHECK(j["surface"]["hypersurface"] == "a^4+b^4+c^4+d^4");
}

TEST_CASE("reading the invariants payload from stdin") {
    std::string cmd = "cat " + fixture("toy_syzygy.json") + " | " + std::string(K3SYZ_CLI_PATH) +
                      " invariants - 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    REQUIRE(WEXITSTATUS(status) == 0);
    json j = json::parse(out);
    CHECK(j["spl_dim"] == 6);  // dim Ext^1(M,M) of the rank-2 toy bundle
}

TEST_CASE("experiment loop is seed-deterministic") {
    std::string cmd = "experiment --surface " + fixture("fermat_quartic.json") +
                      " --degree 2 --dim 3 --count 2 --seed 5";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j["count"] == 2);
    int total = 0;
    for (const auto& [k, v] : j["verdict_counts"].items()) total += v.get<int>();
    CHECK(total == 2);
}
