#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "support.hpp"

using namespace slinv;
using namespace testing;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path kData = SLINV_TEST_DATA;

struct Workspace {
    fs::path dir;
    Workspace() {
        static int counter = 0;
        dir = fs::temp_directory_path() / ("slinv_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

int cli(const std::string& args) {
    const std::string cmd = std::string("\"") + SLINV_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

cplx as_complex(const json& j) { return j.is_array() ? cplx(j[0].get<double>(), j[1].get<double>()) : cplx(j.get<double>()); }

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

void check_meta(const json& j, const std::string& command) {
    REQUIRE(j.contains("meta"));
    const json& m = j["meta"];
    CHECK(m["tool"] == "slinv");
    CHECK(m["version"] == slinv::version);
    CHECK(m["command"] == command);
    CHECK(m["input_hash"].get<std::string>().size() == 16);
    CHECK(m["grid"]["cells"].get<int>() > 0);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("forward on the Dirichlet file") {
    Workspace w;
    REQUIRE(cli("forward " + (kData / "zero-dirichlet.problem.json").string() + " --eigs 12 --out " + w.dir.string()) == 0);
    const json s = load(w / "spectrum.json");
    check_meta(s, "forward");
    REQUIRE(s["eigenvalues"].size() == 12);
    for (int n = 1; n <= 12; ++n) CHECK(std::abs(as_complex(s["eigenvalues"][n - 1]) - std::pow(n - 0.5, 2)) <= 1e-8);
    const json c = load(w / "cauchy.json");
    check_meta(c, "forward");
    CHECK(c["data"]["A"].size() == 1);
}

TEST_CASE("forward on a step potential matches the frozen scan") {
    Workspace w;
    REQUIRE(cli("forward " + (kData / "step-neumann.problem.json").string() + " --eigs 13 --out " + w.dir.string()) == 0);
    const json s = load(w / "spectrum.json");
    const json golden = load(kData / "step-neumann.eigenvalues.json");
    REQUIRE(s["eigenvalues"].size() == golden["eigenvalues"].size());
    for (size_t i = 0; i < golden["eigenvalues"].size(); ++i)
        CHECK(std::abs(as_complex(s["eigenvalues"][i]) - golden["eigenvalues"][i].get<double>()) <= 1e-6);
}

TEST_CASE("schema errors exit with 2") {
    Workspace w;
    write(w.dir / "bad.json", "{\"p1\": [1]}");
    write(w.dir / "broken.json", "{not json");
    write(w.dir / "empty.json", "[]");
    write(w.dir / "norm.json", "{\"p1\": [0.5], \"p2\": [3], \"f\": {\"kind\": \"constant\", \"f1\": 1, \"f2\": 0}, \"subspectrum\": [1, 2]}");
    const std::string problem = (kData / "step-neumann.problem.json").string();
    CHECK(cli("reconstruct " + (w / "bad.json") + " --out " + w.dir.string()) == 2);
    CHECK(cli("forward " + (w / "broken.json") + " --out " + w.dir.string()) == 2);
    CHECK(cli("forward " + (w / "missing.json") + " --out " + w.dir.string()) == 2);
    CHECK(cli("reconstruct " + problem + " " + (w / "empty.json") + " --out " + w.dir.string()) == 2);
    CHECK(cli("reconstruct " + (w / "norm.json") + " --out " + w.dir.string()) == 2);
    CHECK(cli("reconstruct " + problem + " --bogus-flag") == 2);
    CHECK(cli("") == 2);
}

TEST_CASE("solver failures exit with 3") {
    Workspace w;
    json p = load(kData / "zero-dirichlet.problem.json");
    for (auto& v : p["sigma"]["samples"]) v = json::array({1e200, 0.0});
    write(w.dir / "huge.json", p.dump());
    CHECK(cli("forward " + (w / "huge.json") + " --eigs 4 --out " + w.dir.string()) == 3);
}

TEST_CASE("reconstruct round trip, strict mode and determinism") {
    Workspace w;
    const std::string problem = (kData / "step-p1-r1.problem.json").string();
    REQUIRE(cli("forward " + problem + " --eigs 44 --out " + (w / "fwd")) == 0);
    const std::string spectrum = w / "fwd/spectrum.json";
    REQUIRE(cli("reconstruct " + problem + " " + spectrum + " --eigs 40 --out " + (w / "a")) == 0);
    const json r = load(w / "a/report.json");
    check_meta(r, "reconstruct");
    CHECK(r["errors"]["rel_J"].get<double>() <= 1e-3);
    CHECK(r["errors"]["rel_G"].get<double>() <= 1e-3);
    CHECK(r["errors"]["abs_A"].get<double>() <= 1e-3);
    CHECK_FALSE(r["report"]["non_unique"].get<bool>());
    check_meta(load(w / "a/cauchy_recovered.json"), "reconstruct");

    REQUIRE(cli("reconstruct " + problem + " " + spectrum + " --eigs 40 --out " + (w / "b")) == 0);
    CHECK(slurp(w / "a/report.json") == slurp(w / "b/report.json"));
    CHECK(slurp(w / "a/cauchy_recovered.json") == slurp(w / "b/cauchy_recovered.json"));

    CHECK(cli("reconstruct " + problem + " " + spectrum + " --eigs 8 --degree 10 --strict --out " + (w / "c")) == 4);
    CHECK(cli("reconstruct " + problem + " " + spectrum + " --eigs 8 --degree 10 --out " + (w / "c")) == 0);
    CHECK(load(w / "c/report.json")["report"]["non_unique"].get<bool>());
    CHECK(cli("reconstruct " + problem + " " + spectrum + " --eigs 40 --report custom.json --out " + (w / "d")) == 0);
    CHECK(fs::exists(w.dir / "d/custom.json"));
}

TEST_CASE("stability table") {
    Workspace w;
    const std::string problem = (kData / "step-p1-r1.problem.json").string();
    REQUIRE(cli("forward " + problem + " --eigs 40 --out " + (w / "fwd")) == 0);
    const std::string args = "stability " + problem + " " + (w / "fwd/spectrum.json") + " --omega 0,1e-3,1e-2 --trials 6 --seed 3";
    REQUIRE(cli(args + " --out " + (w / "a")) == 0);
    REQUIRE(cli(args + " --out " + (w / "b")) == 0);
    const std::string csv = slurp(w / "a/stability.csv");
    CHECK(csv == slurp(w / "b/stability.csv"));
    CHECK(slurp(w / "a/stability.json") == slurp(w / "b/stability.json"));
    CHECK(csv.find("# tool=slinv version=" + std::string(slinv::version)) == 0);
    CHECK(csv.find("input_hash=") != std::string::npos);
    CHECK(csv.find("grid_cells=128") != std::string::npos);
    std::istringstream lines(csv);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#' || line.starts_with("omega")) continue;
        ++rows;
        if (line.starts_with("0,")) {
            const double err_u = std::stod(line.substr(line.find(',', 2) + 1));
            CHECK(err_u <= 1e-10);
        }
    }
    CHECK(rows == 18);
    const json s = load(w / "a/stability.json");
    check_meta(s, "stability");
    CHECK(s["ratio_spread"].get<double>() <= 3.0);
    REQUIRE(cli("stability " + problem + " " + (w / "fwd/spectrum.json") + " --omega 1e-3 --trials 6 --seed 4 --out " + (w / "c")) == 0);
    CHECK(slurp(w / "c/stability.csv") != csv);
}

TEST_CASE("diagnose") {
    Workspace w;
    std::string ints = "[";
    for (int n = 1; n <= 20; ++n) ints += (n > 1 ? ", " : "") + std::to_string(n * n);
    write(w.dir / "ints.json", ints + "]");
    REQUIRE(cli("diagnose " + (w / "ints.json") + " --out " + (w / "a")) == 0);
    const json d = load(w / "a/diagnostics.json");
    check_meta(d, "diagnose");
    CHECK(d["classes"]["class_s"].get<bool>());
    CHECK(d["sine_family"]["diagnostics"]["cond"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(d["xi_identity_residual"].get<double>() <= 1e-8);

    write(w.dir / "dup.json", "{\"subspectrum\": [1, 4, 4, 9]}");
    REQUIRE(cli("diagnose " + (w / "dup.json") + " --out " + (w / "b")) == 0);
    CHECK_FALSE(load(w / "b/diagnostics.json")["classes"]["class_s"].get<bool>());

    const std::string problem = (kData / "step-p1-r1.problem.json").string();
    REQUIRE(cli("forward " + problem + " --eigs 40 --out " + (w / "fwd")) == 0);
    json p = load(problem);
    p["subspectrum"] = load(w / "fwd/spectrum.json")["eigenvalues"];
    write(w.dir / "with_sub.json", p.dump());
    REQUIRE(cli("diagnose " + (w / "with_sub.json") + " --out " + (w / "c")) == 0);
    const json c = load(w / "c/diagnostics.json");
    const auto conds = c["moment_family"]["conds"].get<std::vector<double>>();
    REQUIRE(conds.size() >= 2);
    for (size_t i = 1; i < conds.size(); ++i) CHECK(conds[i] >= conds[i - 1] * (1 - 1e-12));
    CHECK(conds.back() < 1e6);
}

TEST_CASE("hl verb with the drop rule") {
    Workspace w;
    REQUIRE(cli("corpus --eigs 0 --out " + (w / "corpus")) == 0);
    const std::string two = w / "corpus/step-p1-r3.two_sided.json";
    REQUIRE(cli("hl " + two + " --eigs 40 --drop 1 --out " + (w / "a")) == 0);
    const json r = load(w / "a/report.json");
    check_meta(r, "hl");
    CHECK(r["hl"]["guaranteed_drop"].get<int>() == 1);
    CHECK(r["errors"]["rel_J"].get<double>() <= 1e-3);
    CHECK(r["errors"]["abs_A"].get<double>() <= 1e-3);
    CHECK(cli("hl " + two + " --eigs 40 --drop 2 --strict --out " + (w / "b")) == 4);
    CHECK(load(w / "b/report.json")["hl"]["drop_exceeds_rule"].get<bool>());
    CHECK(cli("hl " + (w / "corpus/step-p2-r3.two_sided.json") + " --eigs 10 --out " + (w / "c")) == 2);
}

}
