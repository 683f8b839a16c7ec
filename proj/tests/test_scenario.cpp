#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pathgauge/scenario.hpp"

using namespace pathgauge;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("pathgauge_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int line_count(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("the preset catalogue is fixed") {
    const auto names = preset_names();
    REQUIRE(names.size() == 9);
    CHECK(names.front() == "velocity-gauge");
    CHECK(names.back() == "oned-pair");
    for (const auto& name : names) CHECK_NOTHROW(preset_config(name));

    try {
        preset_config("velocity");
        FAIL("expected validation_error");
    } catch (const validation_error& err) {
        CHECK(std::string(err.what()).find("velocity-gauge") != std::string::npos);
    }
}

TEST_CASE("preset configs are canonical JSON") {
    for (const auto& name : preset_names()) {
        const std::string text = preset_config(name);
        const auto parsed = nlohmann::ordered_json::parse(text);
        CHECK(parsed.at("schema_version") == 1);
        CHECK(parsed.at("name") == name);
        CHECK(text == parsed.dump(2) + "\n");
    }
}

TEST_CASE("running a preset writes the declared CSV with the pinned schema") {
    const fs::path dir = fresh_dir("run");
    ScenarioOverrides ov;
    ov.out_dir = dir.string();
    const ScenarioResult res = run_scenario(preset_config("velocity-gauge"), ov);

    CHECK(res.name == "velocity-gauge");
    REQUIRE(res.output_files.size() == 1);
    const std::string csv = slurp(res.output_files.front());
    CHECK(csv.rfind("x0,x1,x2,x3,A_0,A_1,A_2,A_3,err\n", 0) == 0);
    CHECK(line_count(csv) == 1 + 5 * 5 * 5);
    CHECK(res.summary.find("scenario velocity-gauge") != std::string::npos);
    CHECK(res.summary.find("wrote ") != std::string::npos);

    // seed is echoed in the summary when given
    ov.seed = 42;
    ov.has_seed = true;
    const ScenarioResult seeded = run_scenario(preset_config("velocity-gauge"), ov);
    CHECK(seeded.summary.find("seed 42") != std::string::npos);
}

TEST_CASE("quantize and oned presets emit the quantization schema") {
    const fs::path dir = fresh_dir("schemas");
    ScenarioOverrides ov;
    ov.out_dir = dir.string();

    const ScenarioResult eblock = run_scenario(preset_config("eblock-flux"), ov);
    const std::string qcsv = slurp(eblock.output_files.front());
    CHECK(qcsv.rfind("phase,n,residual,quantized\n", 0) == 0);
    CHECK(line_count(qcsv) == 1 + 8);
    // integer probe charges land on the lattice: quantized rows exist
    CHECK(qcsv.find(",1\n") != std::string::npos);
    CHECK(qcsv.find(",0\n") != std::string::npos);

    const ScenarioResult flux = run_scenario(preset_config("gauge-flux-links"), ov);
    const std::string fcsv = slurp(flux.output_files.front());
    CHECK(fcsv.rfind("phi,flux,err\n", 0) == 0);
    CHECK(line_count(fcsv) == 1 + 8);
}

TEST_CASE("outputs are byte-identical across repeated runs and thread counts") {
    const fs::path dir_a = fresh_dir("det_a");
    const fs::path dir_b = fresh_dir("det_b");
    const fs::path dir_c = fresh_dir("det_c");
    for (const char* preset : {"velocity-gauge", "gauge-flux-links", "oned-pair"}) {
        const std::string cfg = preset_config(preset);
        ScenarioOverrides ov;

        ov.out_dir = dir_a.string();
        ::setenv("PATHGAUGE_THREADS", "1", 1);
        const ScenarioResult a = run_scenario(cfg, ov);

        ov.out_dir = dir_b.string();
        const ScenarioResult b = run_scenario(cfg, ov);

        ov.out_dir = dir_c.string();
        ::setenv("PATHGAUGE_THREADS", "4", 1);
        CHECK(scenario_threads() == 4);
        const ScenarioResult c = run_scenario(cfg, ov);
        ::unsetenv("PATHGAUGE_THREADS");

        const std::string bytes = slurp(a.output_files.front());
        CHECK(bytes == slurp(b.output_files.front()));
        CHECK(bytes == slurp(c.output_files.front()));
    }
}

TEST_CASE("scenario_threads parses the environment defensively") {
    ::unsetenv("PATHGAUGE_THREADS");
    CHECK(scenario_threads() == 1);
    ::setenv("PATHGAUGE_THREADS", "3", 1);
    CHECK(scenario_threads() == 3);
    ::setenv("PATHGAUGE_THREADS", "abc", 1);
    CHECK(scenario_threads() == 1);
    ::setenv("PATHGAUGE_THREADS", "0", 1);
    CHECK(scenario_threads() == 1);
    ::setenv("PATHGAUGE_THREADS", "9999", 1);
    CHECK(scenario_threads() == 64);
    ::unsetenv("PATHGAUGE_THREADS");
}

TEST_CASE("custom configs run through the same pipeline") {
    const fs::path dir = fresh_dir("custom");
    const std::string cfg = R"({
        "schema_version": 1,
        "name": "tiny",
        "field": {"type": "uniform_e", "E0": [0.3, -0.2, 0.5]},
        "paths": {"main": {"builtin": "velocity"}},
        "task": {
            "type": "potential",
            "path": "main",
            "grid": {"list": [[1.0, 0.5, -0.25, 0.75], [2.0, 1.0, 0.0, -0.5]]},
            "output": "tiny.csv"
        }
    })";
    ScenarioOverrides ov;
    ov.out_dir = dir.string();
    ov.tol = 1e-9;
    ov.quad_order = 16;
    const ScenarioResult res = run_scenario(cfg, ov);
    const std::string csv = slurp(res.output_files.front());
    CHECK(line_count(csv) == 1 + 2);
    // covariant A_1 = ct E0_x at the first grid point: 1.0 * 0.3
    {
        std::istringstream rows(csv);
        std::string header, first;
        std::getline(rows, header);
        std::getline(rows, first);
        std::istringstream cells(first);
        std::string cell;
        for (int i = 0; i <= 5; ++i) std::getline(cells, cell, ',');
        CHECK(std::stod(cell) == doctest::Approx(0.3).epsilon(1e-12));
    }

    // a config file on disk runs identically
    const fs::path cfg_path = dir / "tiny.json";
    std::ofstream(cfg_path) << cfg;
    const ScenarioResult from_file = run_scenario_file(cfg_path.string(), ov);
    CHECK(slurp(from_file.output_files.front()) == csv);
}

TEST_CASE("validation problems are rejected before any output is written") {
    ScenarioOverrides ov;
    ov.out_dir = fresh_dir("bad").string();

    CHECK_THROWS_AS(run_scenario("this is not json", ov), validation_error);
    CHECK_THROWS_AS(run_scenario("{}", ov), validation_error);
    CHECK_THROWS_AS(run_scenario(R"({"schema_version": 2, "task": {"type": "oned"}})", ov),
                    validation_error);
    CHECK_THROWS_AS(run_scenario(R"({"schema_version": 1})", ov), validation_error);
    CHECK_THROWS_AS(
        run_scenario(R"({"schema_version": 1, "task": {"type": "mystery"}})", ov),
        validation_error);
    CHECK_THROWS_AS(
        run_scenario(
            R"({"schema_version": 1, "field": {"type": "plasma"},
                "task": {"type": "potential", "path": "main", "grid": {"list": [[0,0,0,0]]}}})",
            ov),
        validation_error);
    CHECK_THROWS_AS(
        run_scenario(
            R"({"schema_version": 1, "field": {"type": "uniform_e", "E0": [1, 0, 0]},
                "task": {"type": "potential", "path": "missing", "grid": {"list": [[0,0,0,0]]}}})",
            ov),
        validation_error);
    CHECK(fs::is_empty(ov.out_dir));

    CHECK_THROWS_AS(run_scenario_file("/nonexistent/config.json", ov), validation_error);
}
