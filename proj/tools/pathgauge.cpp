#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pathgauge/scenario.hpp"
#include "pathgauge/types.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathgauge: path-dependent electrodynamics scenario runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_name;
    double tol = -1.0;
    int quad_order = -1;
    unsigned long long seed = 0;
    std::string out_dir = ".";

    CLI::App* run = app.add_subcommand("run", "Run a scenario from a JSON config file");
    run->add_option("config", config_path, "path to the config file")->required();
    run->add_option("--tol", tol, "override the quadrature tolerance");
    run->add_option("--quad-order", quad_order, "override the Gauss-Legendre order");
    CLI::Option* run_seed = run->add_option("--seed", seed, "seed recorded in the run summary");
    run->add_option("--out", out_dir, "directory for output files");

    CLI::App* preset = app.add_subcommand("preset", "Write a named preset config and run it");
    preset->add_option("name", preset_name, "preset name (see 'list')")->required();
    preset->add_option("--tol", tol, "override the quadrature tolerance");
    preset->add_option("--quad-order", quad_order, "override the Gauss-Legendre order");
    CLI::Option* preset_seed = preset->add_option("--seed", seed, "seed recorded in the run summary");
    preset->add_option("--out", out_dir, "directory for the config and output files");

    CLI::App* list = app.add_subcommand("list", "List the available presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (list->parsed()) {
            for (const auto& name : pathgauge::preset_names()) std::cout << name << "\n";
            return 0;
        }

        pathgauge::ScenarioOverrides ov;
        ov.tol = tol;
        ov.quad_order = quad_order;
        ov.seed = seed;
        ov.has_seed = run_seed->count() > 0 || preset_seed->count() > 0;
        ov.out_dir = out_dir;

        if (run->parsed()) {
            const auto result = pathgauge::run_scenario_file(config_path, ov);
            std::cout << result.summary;
            return 0;
        }

        // preset: emit the config next to the outputs, then run it.
        const std::string text = pathgauge::preset_config(preset_name);
        const std::string cfg_path = out_dir + "/" + preset_name + ".json";
        {
            std::ofstream f(cfg_path, std::ios::binary);
            if (!f) throw pathgauge::validation_error("cannot write config file " + cfg_path);
            f << text;
        }
        const auto result = pathgauge::run_scenario(text, ov);
        std::cout << "config " << cfg_path << "\n" << result.summary;
        return 0;
    } catch (const pathgauge::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
