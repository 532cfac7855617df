#pragma once
/**
 * @file io.hpp
 * @brief CSV / JSON artifacts.
 *
 * CSV files may start with '#'-prefixed comment lines (the CLI writes the
 * config hash there); readers skip them. Numbers are written in shortest
 * round-trip form, so identical inputs give byte-identical files.
 */

#include "helmstab/greens.hpp"
#include "helmstab/inversion.hpp"
#include "helmstab/sources.hpp"
#include "helmstab/stability.hpp"
#include "helmstab/timedomain.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace helmstab::io {

/// Shortest decimal representation that round-trips.
std::string format_double(double v);

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// `x,f0,f1` with header.
void write_sources_csv(std::ostream& os, const SourcePair& sp, std::string_view comment = {});
/// Throws std::runtime_error on malformed input or a non-uniform node set.
SourcePair read_sources_csv(std::istream& is, double margin = SourcePair::kDefaultMargin);
SourcePair read_sources_csv(const std::filesystem::path& path, double margin = SourcePair::kDefaultMargin);

/// `omega,re_dminus,im_dminus,re_dplus,im_dplus`.
void write_dataset_csv(std::ostream& os, const BoundaryDataset& ds, std::string_view comment = {});
BoundaryDataset read_dataset_csv(std::istream& is, const MediumConfig& medium);
/// {K, epsilon2, E, noise_eps2, medium: {c_p, c_n, alpha}}; E is null when undefined.
std::string dataset_json(const BoundaryDataset& ds, std::string_view config_hash = {});

/// `t,u_minus,u_plus,ut_minus,ut_plus`.
void write_traces_csv(std::ostream& os, const WaveState& ws, std::string_view comment = {});

/// `x,f0_true,f0_rec,f1_true,f1_rec`.
void write_reconstruction_csv(std::ostream& os, const SourcePair& truth, const SourcePair& recovered,
                              std::string_view comment = {});
/// {lambda, residual, rel_err_f0, rel_err_f1, eps2, K, alpha, seed, ...}.
std::string reconstruction_json(const ReconstructionResult& res, double eps2, double K, double alpha,
                                std::uint64_t seed, std::string_view config_hash = {});

/// One row per cell with every report field.
void write_sweep_csv(std::ostream& os, std::span<const StabilityReport> reports, std::string_view comment = {});

/// Sweep grid, fitted constant and trend verdicts.
std::string sweep_manifest_json(const SweepSpec& spec, const SweepSummary& summary, std::string_view config_hash = {});

}  // namespace helmstab::io
