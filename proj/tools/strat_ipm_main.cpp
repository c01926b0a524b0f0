#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "stratipm/errors.hpp"
#include "stratipm/scenario.hpp"

using namespace stratipm;

int main(int argc, char** argv) {
    CLI::App app{"stratified-IPM pseudo-spectral simulator and verification harness"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool quiet = false;
    app.add_option("--out", out_dir, "output directory for CSV curves and summaries");
    app.add_option("--seed", seed, "override the scenario RNG seed");
    app.add_flag("--quiet", quiet, "suppress per-check stdout lines");

    std::string config_path;
    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario from a config file");
    run_cmd->add_option("config", config_path, "key = value config file")->required();

    std::string preset_id;
    CLI::App* preset_cmd = app.add_subcommand("preset", "run a built-in scenario");
    preset_cmd->add_option("id", preset_id, "preset id (see `list`)")->required();

    CLI::App* list_cmd = app.add_subcommand("list", "list presets and the claim each reproduces");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            for (const std::string& id : preset_ids()) {
                const Scenario s = preset(id);
                std::printf("%-26s %-22s %s\n", s.id.c_str(), s.anchor.c_str(),
                            s.description.c_str());
            }
            return 0;
        }
        Scenario s;
        if (run_cmd->parsed()) {
            s = parse_config(config_path);
        } else {
            s = preset(preset_id);
        }
        const ScenarioResult res = run_scenario(s, out_dir, quiet, seed);
        return res.exit_code;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
