#pragma once

#include "config.hpp"

#include <filesystem>

namespace helmstab::cli {

struct RunContext {
    ExperimentConfig config;
    std::filesystem::path out;
    unsigned jobs = 1;
};

// Each returns the process exit code: 0 ok, 1 a checked property failed.
int run_forward(const RunContext& ctx);
int run_crosscheck(const RunContext& ctx);
int run_invert(const RunContext& ctx);
int run_sweep(const RunContext& ctx);
int run_bounds(const RunContext& ctx);

}  // namespace helmstab::cli
