#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>

using namespace helmstab::cli;

int main(int argc, char** argv) {
    CLI::App app{"helmstab: multi-frequency source recovery in an attenuating layered line"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    unsigned jobs = 1;

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const RunContext&);
    };
    const Command commands[] = {
        {"forward", "boundary data for the configured sources", run_forward},
        {"crosscheck", "frequency-domain data against the transformed time-domain traces", run_crosscheck},
        {"invert", "Tikhonov reconstruction from synthetic data", run_invert},
        {"sweep", "(K, alpha) stability sweep", run_sweep},
        {"bounds", "evaluate the closed-form bounds", run_bounds},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", config_path, "JSON experiment config")->required();
        sub->add_option("--out", out_dir, "output directory (default: the config's \"output\")");
        sub->add_option("--jobs", jobs, "worker threads for sweep")->check(CLI::Range(1u, 1024u));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunContext ctx{load_config(config_path), {}, jobs};
        ctx.out = out_dir.empty() ? ctx.config.output : std::filesystem::path(out_dir);
        for (const auto& c : commands) {
            if (app.got_subcommand(c.name)) return c.run(ctx);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
