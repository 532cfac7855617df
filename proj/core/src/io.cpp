#include "helmstab/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace helmstab::io {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace {

void write_comment(std::ostream& os, std::string_view comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
}

template <typename... Ts>
void write_row(std::ostream& os, const Ts&... values) {
    bool first = true;
    ((os << (first ? "" : ",") << format_double(values), first = false), ...);
    os << '\n';
}

// Data rows of a CSV: comment lines skipped, header checked against `expected`.
std::vector<std::vector<double>> read_table(std::istream& is, std::string_view expected) {
    std::string line;
    bool header_seen = false;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != expected) {
                throw std::runtime_error("csv: expected header '" + std::string(expected) + "', got '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            const auto* first = cell.data();
            const auto* last = cell.data() + cell.size();
            const auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc{} || res.ptr != last) {
                throw std::runtime_error("csv: bad number '" + cell + "' on line " + std::to_string(line_no));
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw std::runtime_error("csv: missing header '" + std::string(expected) + "'");
    return rows;
}

json medium_json(const MediumConfig& m) { return {{"c_p", m.c_p()}, {"c_n", m.c_n()}, {"alpha", m.alpha()}}; }

json optional_number(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

}  // namespace

void write_sources_csv(std::ostream& os, const SourcePair& sp, std::string_view comment) {
    write_comment(os, comment);
    os << "x,f0,f1\n";
    for (std::size_t j = 0; j < sp.grid.n(); ++j) write_row(os, sp.grid.x(j), sp.f0[j], sp.f1[j]);
}

SourcePair read_sources_csv(std::istream& is, double margin) {
    const auto rows = read_table(is, "x,f0,f1");
    for (const auto& r : rows) {
        if (r.size() != 3) throw std::runtime_error("sources csv: every row needs 3 columns");
    }
    SourceGrid grid(rows.size());  // throws unless odd and large enough
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (std::abs(rows[j][0] - grid.x(j)) > 1e-9) {
            throw std::runtime_error("sources csv: nodes must be uniform on [-1, 1] in increasing order (row " +
                                     std::to_string(j) + ")");
        }
    }
    SourcePair sp = SourcePair::zeros(grid, margin);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        sp.f0[j] = rows[j][1];
        sp.f1[j] = rows[j][2];
    }
    sp.validate();
    return sp;
}

SourcePair read_sources_csv(const std::filesystem::path& path, double margin) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sources file " + path.string());
    return read_sources_csv(in, margin);
}

void write_dataset_csv(std::ostream& os, const BoundaryDataset& ds, std::string_view comment) {
    write_comment(os, comment);
    os << "omega,re_dminus,im_dminus,re_dplus,im_dplus\n";
    for (std::size_t i = 0; i < ds.omegas.size(); ++i) {
        write_row(os, ds.omegas[i], ds.d_minus[i].real(), ds.d_minus[i].imag(), ds.d_plus[i].real(),
                  ds.d_plus[i].imag());
    }
}

BoundaryDataset read_dataset_csv(std::istream& is, const MediumConfig& medium) {
    const auto rows = read_table(is, "omega,re_dminus,im_dminus,re_dplus,im_dplus");
    BoundaryDataset ds;
    ds.medium = medium;
    for (const auto& r : rows) {
        if (r.size() != 5) throw std::runtime_error("dataset csv: every row needs 5 columns");
        ds.omegas.push_back(r[0]);
        ds.d_minus.emplace_back(r[1], r[2]);
        ds.d_plus.emplace_back(r[3], r[4]);
    }
    check_omega_grid(ds.omegas);
    ds.refresh();
    return ds;
}

std::string dataset_json(const BoundaryDataset& ds, std::string_view config_hash) {
    json j;
    if (!config_hash.empty()) j["config_hash"] = std::string(config_hash);
    j["K"] = ds.K;
    j["epsilon2"] = ds.epsilon2;
    j["E"] = optional_number(ds.E());
    j["noise_eps2"] = ds.noise_eps2;
    j["medium"] = medium_json(ds.medium);
    j["count"] = ds.omegas.size();
    return j.dump(2) + "\n";
}

void write_traces_csv(std::ostream& os, const WaveState& ws, std::string_view comment) {
    write_comment(os, comment);
    os << "t,u_minus,u_plus,ut_minus,ut_plus\n";
    for (std::size_t m = 0; m < ws.t.size(); ++m) {
        write_row(os, ws.t[m], ws.u_minus[m], ws.u_plus[m], ws.ut_minus[m], ws.ut_plus[m]);
    }
}

void write_reconstruction_csv(std::ostream& os, const SourcePair& truth, const SourcePair& recovered,
                              std::string_view comment) {
    if (!(truth.grid == recovered.grid)) throw std::invalid_argument("reconstruction csv: grids differ");
    write_comment(os, comment);
    os << "x,f0_true,f0_rec,f1_true,f1_rec\n";
    for (std::size_t j = 0; j < truth.grid.n(); ++j) {
        write_row(os, truth.grid.x(j), truth.f0[j], recovered.f0[j], truth.f1[j], recovered.f1[j]);
    }
}

std::string reconstruction_json(const ReconstructionResult& res, double eps2, double K, double alpha,
                                std::uint64_t seed, std::string_view config_hash) {
    json j;
    if (!config_hash.empty()) j["config_hash"] = std::string(config_hash);
    j["lambda"] = res.lambda;
    j["residual"] = res.residual;
    j["seminorm"] = res.seminorm;
    j["rel_err_f0"] = optional_number(res.rel_err_f0);
    j["rel_err_f1"] = optional_number(res.rel_err_f1);
    j["err_l2"] = optional_number(res.err_l2);
    j["eps2"] = eps2;
    j["K"] = K;
    j["alpha"] = alpha;
    j["seed"] = seed;
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    return j.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& os, std::span<const StabilityReport> reports, std::string_view comment) {
    write_comment(os, comment);
    os << "K,alpha,seed,eps2,E,k_split,I1,I2,I,mu_lb,lemma21_rhs,tail_rhs,thm_rhs,err_l2,ratio,"
          "rel_err_f0,rel_err_f1,lambda,residual,converged,e_undefined\n";
    for (const auto& r : reports) {
        os << format_double(r.K) << ',' << format_double(r.alpha) << ',' << r.seed << ',' << format_double(r.eps2)
           << ',' << (r.E ? format_double(*r.E) : std::string("nan")) << ',' << format_double(r.k_split) << ','
           << format_double(r.I1) << ',' << format_double(r.I2) << ',' << format_double(r.I) << ','
           << format_double(r.mu_lb) << ',' << format_double(r.lemma21_rhs) << ',' << format_double(r.tail_rhs)
           << ',' << format_double(r.thm_rhs) << ',' << format_double(r.err_l2) << ',' << format_double(r.ratio())
           << ',' << format_double(r.rel_err_f0) << ',' << format_double(r.rel_err_f1) << ','
           << format_double(r.lambda) << ',' << format_double(r.residual) << ',' << (r.converged ? 1 : 0) << ','
           << (r.e_undefined ? 1 : 0) << '\n';
    }
}

std::string sweep_manifest_json(const SweepSpec& spec, const SweepSummary& summary, std::string_view config_hash) {
    json j;
    if (!config_hash.empty()) j["config_hash"] = std::string(config_hash);
    j["medium"] = {{"c_p", spec.c_p}, {"c_n", spec.c_n}};
    j["K_list"] = spec.K_list;
    j["alpha_list"] = spec.alpha_list;
    j["eps2_target"] = spec.eps2_target;
    j["seeds"] = spec.seeds;
    j["grid_n"] = spec.truth.grid.n();
    j["fitted_constant"] = summary.fitted_constant;
    j["all_converged"] = summary.all_converged;
    auto verdicts = [](const std::vector<TrendVerdict>& vs) {
        json arr = json::array();
        for (const auto& v : vs) arr.push_back({{"holds", v.holds}, {"worst_step", optional_number(v.worst_step)}});
        return arr;
    };
    j["trend_along_K"] = verdicts(summary.along_K);
    j["trend_along_alpha"] = verdicts(summary.along_alpha);
    j["trends_hold"] = summary.trends_hold();
    return j.dump(2) + "\n";
}

}  // namespace helmstab::io
