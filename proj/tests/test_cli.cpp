#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

// End-to-end runs of the installed binary; OPSPACE_BIN points at it.

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cmd(const std::string& full_cmd) {
    FILE* pipe = popen(full_cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    RunResult r;
    r.out = std::move(out);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string binary() {
    const char* bin = std::getenv("OPSPACE_BIN");
    REQUIRE(bin != nullptr);
    return std::string("'") + bin + "'";
}

RunResult opspace(const std::string& args, bool merge_stderr = false) {
    return run_cmd(binary() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null"));
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "opspace_cli_test";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("build emits a parseable basis and a signed unit") {
    RunResult basis = opspace("build --space hnk --n 3 --k 2");
    CHECK(basis.code == 0);
    json jb = json::parse(basis.out);
    CHECK(jb["schema"] == "opspace/1");
    CHECK(jb["type"] == "basis");
    CHECK(jb["name"] == "H_3^2");
    CHECK(jb["kind"] == "hnk");
    CHECK(jb["n"] == 3);
    CHECK(jb["k"] == 2);
    REQUIRE(jb["basis"].is_array());
    CHECK(jb["basis"].size() == 3);
    CHECK(jb["basis"][0][0]["rows"] == 3);
    CHECK(jb["basis"][0][0]["cols"] == 3);
    CHECK(jb["basis"][0][0]["data"].size() == 9);

    RunResult unit = opspace("build --space ones --n 4 --k 2 --I 1 --J 3,4");
    CHECK(unit.code == 0);
    json ju = json::parse(unit.out);
    CHECK(ju["type"] == "signed_unit");
    CHECK(ju["I"] == json::array({1}));
    CHECK(ju["J"] == json::array({3, 4}));
    CHECK((ju["sign"] == 1 || ju["sign"] == -1));
    // lex ranks of J among 2-subsets and I among 1-subsets of {1..4}
    CHECK(ju["row"] == 5);
    CHECK(ju["col"] == 0);

    RunResult phi = opspace("build --space phi --n 2");
    CHECK(phi.code == 0);
    CHECK(json::parse(phi.out)["name"] == "Phi_2");
}

TEST_CASE("usage violations exit with the dedicated code") {
    CHECK(opspace("build --space nosuch --n 3", true).code == 2);
    CHECK(opspace("build --space hnk --n 3", true).code == 2);  // k missing for hnk
    CHECK(opspace("build --space hnk --n 99 --k 2", true).code == 2);
    CHECK(opspace("build --space ones --n 4 --k 2 --I 1,2 --J 3,4", true).code == 2);
    CHECK(opspace("verify --suite nosuch --n 3", true).code == 2);
    CHECK(opspace("verify --suite grid --n 7", true).code == 2); // above the exhaustive cap
    CHECK(opspace("distance --n 3", true).code == 2);            // neither pair nor table
    CHECK(opspace("distance --pair C:R --table --n 3", true).code == 2);
    CHECK(opspace("distance --pair C:Q --n 3", true).code == 2);
    CHECK(opspace("classify --input /no/such/file.json", true).code == 2);
    CHECK(opspace("", true).code == 2); // a subcommand is required
}

TEST_CASE("verification suites report their verdict in the exit code") {
    RunResult car = opspace("verify --suite car --n 6");
    CHECK(car.code == 0);
    json j = json::parse(car.out);
    CHECK(j["type"] == "suite_report");
    CHECK(j["suite"] == "car");
    CHECK(j["n"] == 6);
    CHECK(j["pass"] == true);
    CHECK(j["max_residual"].get<double>() == 0.0);
    REQUIRE(j["details"].is_array());
    CHECK(j["details"].size() >= 1);

    RunResult all = opspace("verify --suite all --n 3");
    CHECK(all.code == 0);
    CHECK(json::parse(all.out)["pass"] == true);
}

TEST_CASE("distance reports known forms and stays within them") {
    RunResult cr = opspace("distance --pair C:R --n 3");
    CHECK(cr.code == 0);
    json j = json::parse(cr.out);
    CHECK(j["type"] == "distance");
    CHECK(j["pair"] == "C_3:R_3");
    CHECK(j["closed_form"].get<double>() == 3.0);
    double product = j["product_lower"].get<double>();
    CHECK(product == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(product <= 3.0 + 1e-9);

    // spelled-out tokens name the same spaces
    RunResult rn = opspace("distance --pair Rn:Cn --n 5");
    CHECK(rn.code == 0);
    json jr = json::parse(rn.out);
    CHECK(jr["pair"] == "R_5:C_5");
    CHECK(jr["closed_form"].get<double>() == 5.0);
    CHECK(jr["product_lower"].get<double>() == doctest::Approx(5.0).epsilon(1e-6));

    RunResult hp = opspace("distance --pair H:Phi --n 4 --k 2 --levels 2 --samples 4");
    CHECK(hp.code == 0);
    json jh = json::parse(hp.out);
    CHECK(jh["pair"] == "H_4^2:Phi_4");
    CHECK(jh["closed_form"].is_null());
    CHECK(jh["product_lower"].get<double>() >= 1.0 - 1e-12);

    // identical runs emit identical bytes
    RunResult again = opspace("distance --pair C:R --n 3");
    CHECK(again.out == cr.out);

    // the seed environment variable is read exactly like the flag
    RunResult flag_seed = opspace("distance --pair C:H --n 4 --k 2 --seed 7");
    RunResult env_seed = run_cmd("OPSPACE_SEED=7 " + binary() +
                                 " distance --pair C:H --n 4 --k 2 2>/dev/null");
    CHECK(flag_seed.code == 0);
    CHECK(env_seed.code == 0);
    CHECK(env_seed.out == flag_seed.out);
    CHECK(env_seed.out.find("seed 7") != std::string::npos);
}

TEST_CASE("tables arrive in both formats") {
    RunResult csv = opspace("distance --table --n 2 --format csv --levels 2 --samples 3");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("pair,n,forward_lower,inverse_lower,product_lower,closed_form,divergent",
                        0) == 0);
    // 5 spaces at n = 2 make 10 unordered pairs
    int lines = 0;
    for (char c : csv.out)
        if (c == '\n') ++lines;
    CHECK(lines == 11);

    RunResult js = opspace("distance --table --n 2 --levels 2 --samples 3");
    CHECK(js.code == 0);
    json j = json::parse(js.out);
    CHECK(j["type"] == "distance_table");
    CHECK(j["rows"].size() == 10);
}

TEST_CASE("classification round-trips through a basis file") {
    fs::path dir = scratch_dir();
    fs::path basis_file = dir / "h32.json";

    RunResult built =
        opspace("build --space hnk --n 3 --k 2 --output '" + basis_file.string() + "'");
    CHECK(built.code == 0);
    CHECK(built.out.empty()); // redirected away from stdout
    REQUIRE(fs::exists(basis_file));

    RunResult cls = opspace("classify --input '" + basis_file.string() + "'");
    CHECK(cls.code == 0);
    json j = json::parse(cls.out);
    CHECK(j["type"] == "classification");
    CHECK(j["verdict"] == "H_3^2");
    CHECK(j["components"] == json::array({2}));
    CHECK(j["degenerate"] == false);
    CHECK(j["ternary"]["verdict"] == "not_ternary_closed");

    // a family that is not made of partial isometries is an operation
    // failure, not a usage error
    fs::path bad_file = dir / "bad.json";
    {
        std::ofstream out(bad_file);
        out << R"([{"rows": 2, "cols": 2, "data": [[0.5, 0], [0, 0], [0, 0], [0, 0]]}])";
    }
    RunResult bad = opspace("classify --input '" + bad_file.string() + "'", true);
    CHECK(bad.code == 1);
    CHECK(bad.out.find("error:") != std::string::npos);

    fs::path garbled_file = dir / "garbled.json";
    {
        std::ofstream out(garbled_file);
        out << "this is not json";
    }
    CHECK(opspace("classify --input '" + garbled_file.string() + "'", true).code == 1);
}
