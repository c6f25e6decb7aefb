#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gspec/runner.hpp"
#include "gspec/svgplot.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gspec-cli-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(GS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WEXITSTATUS(st);
}

fs::path write_config(const fs::path& dir, const std::string& name,
                      const std::string& body) {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << body;
    return p;
}

const char* kSmallGrid = R"("grid": {"L": 256, "dt": 0.0625})";

}  // namespace

TEST_CASE("malformed configs exit 1 and leave no partial outputs") {
    const fs::path dir = fresh_dir("badcfg");
    const fs::path out = dir / "out";
    // missing required params.alphas
    const fs::path cfg = write_config(dir, "sweep.json",
                                      std::string("{\"command\": \"sweep\", ") +
                                          kSmallGrid + ", \"params\": {}}");
    CHECK(run_cli("sweep --config " + cfg.string() + " --out " + out.string()) == 1);
    CHECK(!fs::exists(out));
    // unknown top-level field
    const fs::path cfg2 = write_config(
        dir, "unknown.json", "{\"command\": \"verify\", \"bogus_field\": 1}");
    CHECK(run_cli("verify --config " + cfg2.string() + " --out " + out.string()) == 1);
    // config command mismatching the subcommand
    const fs::path cfg3 = write_config(dir, "mismatch.json", "{\"command\": \"stft\"}");
    CHECK(run_cli("wigner --config " + cfg3.string() + " --out " + out.string()) == 1);
    // invalid JSON
    const fs::path cfg4 = write_config(dir, "broken.json", "{\"command\": ");
    CHECK(run_cli("verify --config " + cfg4.string() + " --out " + out.string()) == 1);
}

TEST_CASE("stft command writes the pinned CSV format") {
    const fs::path dir = fresh_dir("stft");
    const fs::path out = dir / "out";
    const fs::path cfg = write_config(
        dir, "stft.json",
        std::string("{\"command\": \"stft\", ") + kSmallGrid +
            ", \"psgrid\": {\"n\": 32, \"halfwidth\": 4.0}}");
    CHECK(run_cli("stft --config " + cfg.string() + " --out " + out.string()) == 0);
    const std::string csv = slurp(out / "stft.csv");
    CHECK(csv.rfind("ix,iw,x,omega,re,im\n", 0) == 0);
    CHECK(fs::exists(out / "manifest.json"));
    const std::string manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("config_hash") != std::string::npos);
}

TEST_CASE("framebounds command reports the lattice bounds as JSON") {
    const fs::path dir = fresh_dir("fb");
    const fs::path out = dir / "out";
    const fs::path cfg = write_config(
        dir, "fb.json", std::string("{\"command\": \"framebounds\", ") + kSmallGrid +
                            ", \"params\": {\"alpha\": 0.5}}");
    CHECK(run_cli("framebounds --config " + cfg.string() + " --out " + out.string()) ==
          0);
    const std::string rep = slurp(out / "framebounds.json");
    for (const char* key : {"\"A\"", "\"B\"", "\"method\"", "\"L\"", "\"dt\"", "\"rel\""})
        CHECK(rep.find(key) != std::string::npos);
}

TEST_CASE("verify command is deterministic byte-for-byte") {
    const fs::path dir = fresh_dir("verify");
    const fs::path cfg =
        write_config(dir, "verify.json", "{\"command\": \"verify\", \"seed\": 7}");
    const fs::path o1 = dir / "o1", o2 = dir / "o2";
    CHECK(run_cli("verify --config " + cfg.string() + " --out " + o1.string()) == 0);
    CHECK(run_cli("verify --config " + cfg.string() + " --out " + o2.string()) == 0);
    CHECK(slurp(o1 / "verify.json") == slurp(o2 / "verify.json"));
    // manifests agree except for the recorded runtimes
    std::istringstream m1(slurp(o1 / "manifest.json")), m2(slurp(o2 / "manifest.json"));
    std::string l1, l2;
    while (std::getline(m1, l1) && std::getline(m2, l2)) {
        if (l1.find("total_seconds") != std::string::npos) continue;
        CHECK(l1 == l2);
    }
}

TEST_CASE("seed override changes the hashed config") {
    const fs::path dir = fresh_dir("seed");
    const fs::path cfg = write_config(dir, "v.json", "{\"command\": \"verify\"}");
    const fs::path o1 = dir / "o1", o2 = dir / "o2";
    CHECK(run_cli("verify --config " + cfg.string() + " --seed 1 --out " + o1.string()) ==
          0);
    CHECK(run_cli("verify --config " + cfg.string() + " --seed 2 --out " + o2.string()) ==
          0);
    CHECK(slurp(o1 / "manifest.json") != slurp(o2 / "manifest.json"));
}

TEST_CASE("svg emitter is byte-stable against the golden file") {
    const fs::path dir = fresh_dir("svg");
    const fs::path out = dir / "plot.svg";
    gspec::PlotSeries s{"|A(a)-A(1)|",
                        {{0.2, 0.055}, {0.1, 0.028}, {0.05, 0.013}, {0.01, 0.0031}}};
    gspec::write_loglog_svg(out.string(), "frame-bound increments vs |1-alpha|",
                            "|1-alpha|", "increment", {s},
                            {gspec::PlotFitLine{"fit A", 0.98, 0.27}});
    const fs::path golden = fs::path(GS_SOURCE_DIR) / "tests" / "golden" / "sweep.svg";
    CHECK(slurp(out) == slurp(golden));
}

TEST_CASE("svg emitter refuses under-populated plots") {
    const fs::path dir = fresh_dir("svg2");
    gspec::PlotSeries s{"lonely", {{0.5, 1.0}}};
    CHECK_THROWS_AS(gspec::write_loglog_svg((dir / "x.svg").string(), "t", "x", "y", {s}),
                    std::invalid_argument);
}

TEST_CASE("run_config_text rejects bad numeric fields with the field name") {
    try {
        (void)gspec::run_config_text("{\"command\": \"sweep\", \"seed\": -3}", "", -1);
        FAIL("expected ConfigError");
    } catch (const gspec::ConfigError& e) {
        CHECK(std::string(e.what()).find("seed") != std::string::npos);
    }
}
