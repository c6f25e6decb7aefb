#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "gspec/runner.hpp"
#include "gspec/types.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Gabor frame-bound toolkit: STFT/Wigner transforms, Weyl "
                 "quantization, frame bounds and deformation experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int seed = -1, threads = 0;
    const std::vector<std::string> commands = {"stft",   "wigner",     "modnorm",
                                               "framebounds", "sweep", "tradeoff",
                                               "saturation",  "verify"};
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "RNG seed (overrides config)");
        sub->add_option("--threads", threads, "worker thread count");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (threads > 0) gspec::set_max_threads(threads);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        const int code = gspec::run_config_file(config_path, out_dir, seed, command);
        if (code != 0) std::fprintf(stderr, "%s: checks FAILED\n", command.c_str());
        return code;
    } catch (const gspec::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error (%s): %s\n", command.c_str(), e.what());
        return 1;
    }
}
