#pragma once

#include "helmstab/inversion.hpp"
#include "helmstab/medium.hpp"
#include "helmstab/sources.hpp"
#include "helmstab/timedomain.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace helmstab::cli {

/// Thrown for anything wrong with the config or its referenced files (exit 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OmegaSpec {
    double K = 10.0;
    std::optional<std::size_t> count;    // uniform j K / count
    std::optional<double> spacing;       // or a maximum spacing
    std::optional<double> min;           // with count: count points from min to K inclusive
    std::vector<double> grid() const;
};

struct NoiseSpec {
    double eps2_target = 0.0;            // 0: noiseless
    std::vector<std::uint64_t> seeds{1};
};

struct SweepBlock {
    std::vector<double> K_list;
    std::vector<double> alpha_list;
    double jitter = 0.05;
    bool assert_trends = false;
};

struct BoundsBlock {
    double K = 10.0;
    double k = 20.0;
    double k1 = 0.0;                     // imaginary part allowance in lemma21_bound
    double eps2 = 1e-8;
    std::optional<double> alpha;         // defaults to medium.alpha
    std::optional<double> M;             // defaults to constant_M(sources)
};

struct ExperimentConfig {
    std::string raw;                     // bytes the hash is taken over
    std::string hash;
    MediumConfig medium;
    SourcePair sources;
    OmegaSpec omegas;
    NoiseSpec noise;
    SweepBlock sweep;
    BoundsBlock bounds;
    InversionOptions inversion;
    WaveOptions wave;
    double crosscheck_threshold = 0.02;
    std::filesystem::path output = "out";
};

/// Parses and validates every section; relative paths resolve against the
/// config file's directory.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace helmstab::cli
