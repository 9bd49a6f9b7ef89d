#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "specinf/config.hpp"
#include "specinf/oracle.hpp"
#include "specinf/spectral.hpp"

// Run reporting: one JSON document plus CSV tables. All CSV numbers are
// printed with 17 significant digits so identical config + seed gives byte
// identical files.

namespace specinf {

inline constexpr const char* kVersion = "specinf 1.0.0";

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string signature_hash(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
    return std::string(buf);
}

} // namespace detail

struct VerifySummary {
    double bottom = 0.0;
    double edge = 0.0;
    double gap = 0.0;
    double tol = 0.0;
    bool pass = false;
    bool refine_checked = false;
    double refine_bottom = 0.0;
    bool reliable = true;
};

struct RunReport {
    std::string command;
    RunConfig config;
    std::optional<SpectralReport> spectral;
    std::optional<EdgeEstimate> edge;
    std::optional<VerifySummary> verify;
    nlohmann::ordered_json result;   // command-specific payload (localize, character, selfcheck)
    std::vector<std::pair<std::string, double>> timings_s;
};

inline std::string spectrum_csv(const SpectralReport& rep) {
    std::string out;
    int d = rep.grid.d;
    for (int i = 0; i < d; ++i) out += "alpha_" + std::to_string(i) + ",";
    out += "signature_hash,c_alpha,residual,iterations\n";
    for (const SpectralRow& r : rep.rows) {
        for (int i = 0; i < d; ++i) out += detail::fmt_g(r.alpha[i]) + ",";
        out += detail::signature_hash(r.signature) + ",";
        out += detail::fmt_g(r.c_alpha) + ",";
        out += detail::fmt_g(r.residual) + ",";
        out += std::to_string(r.iterations) + "\n";
    }
    return out;
}

// d = 2 only: angle in [0, 2*pi) against the localized bottom, sorted by angle
inline std::string polar_csv(const SpectralReport& rep) {
    if (rep.grid.d != 2) throw InvalidInput("polar csv wants a two dimensional run");
    std::vector<std::pair<double, double>> rows;
    rows.reserve(rep.rows.size());
    for (const SpectralRow& r : rep.rows) {
        double th = std::atan2(r.alpha[1], r.alpha[0]);
        if (th < 0) th += 2.0 * M_PI;
        rows.push_back({th, r.c_alpha});
    }
    std::sort(rows.begin(), rows.end());
    std::string out = "angle,c_alpha\n";
    for (const auto& [th, c] : rows)
        out += detail::fmt_g(th) + "," + detail::fmt_g(c) + "\n";
    return out;
}

inline std::string edge_csv(const EdgeEstimate& e) {
    std::string out = "E,N_small,N_large\n";
    for (std::size_t i = 0; i < e.energies.size(); ++i)
        out += detail::fmt_g(e.energies[i]) + "," + std::to_string(e.counts_small[i]) + "," +
               std::to_string(e.counts_large[i]) + "\n";
    return out;
}

inline nlohmann::ordered_json report_json(const RunReport& rep) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["command"] = rep.command;
    j["seed"] = rep.config.seed;
    j["config_echo"] = serialize_config(rep.config);
    if (rep.spectral) {
        const SpectralReport& s = *rep.spectral;
        nlohmann::ordered_json js;
        js["grid"] = {{"dim", s.grid.d}, {"L", s.grid.L}, {"n", s.grid.n}};
        js["bottom"] = s.bottom;
        js["incomplete"] = s.incomplete;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const SpectralRow& r : s.rows) {
            nlohmann::ordered_json jr;
            jr["alpha"] = std::vector<double>(r.alpha.data(), r.alpha.data() + r.alpha.size());
            jr["signature"] = r.signature;
            jr["signature_hash"] = detail::signature_hash(r.signature);
            jr["c_alpha"] = r.c_alpha;
            jr["residual"] = r.residual;
            jr["iterations"] = r.iterations;
            jr["converged"] = r.converged;
            rows.push_back(std::move(jr));
        }
        js["rows"] = std::move(rows);
        j["spectral"] = std::move(js);
    }
    if (rep.edge) {
        const EdgeEstimate& e = *rep.edge;
        nlohmann::ordered_json je;
        je["found"] = e.found;
        je["edge"] = e.edge;
        je["floor"] = e.floor;
        je["box_lengths"] = {e.box_lengths[0], e.box_lengths[1]};
        je["scan_steps"] = e.energies.size();
        j["edge"] = std::move(je);
    }
    if (rep.verify) {
        const VerifySummary& v = *rep.verify;
        nlohmann::ordered_json jv;
        jv["bottom"] = v.bottom;
        jv["edge"] = v.edge;
        jv["gap"] = v.gap;
        jv["tol"] = v.tol;
        jv["pass"] = v.pass;
        jv["refine_checked"] = v.refine_checked;
        if (v.refine_checked) jv["refine_bottom"] = v.refine_bottom;
        jv["reliable"] = v.reliable;
        j["verify"] = std::move(jv);
    }
    if (!rep.result.is_null()) j["result"] = rep.result;
    nlohmann::ordered_json jt;
    for (const auto& [name, secs] : rep.timings_s) jt[name] = secs;
    j["timings_s"] = std::move(jt);
    return j;
}

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path.string());
    out << content;
    if (!out) throw Error("short write on output file: " + path.string());
}

} // namespace detail

// single writer: every table is assembled in memory (rows pre-sorted) and
// then written in one pass
inline void write_run_report(const RunReport& rep, const std::string& out_dir) {
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    detail::write_text_file(dir / "report.json", report_json(rep).dump(2) + "\n");
    if (rep.spectral) {
        detail::write_text_file(dir / "spectrum.csv", spectrum_csv(*rep.spectral));
        if (rep.spectral->grid.d == 2)
            detail::write_text_file(dir / "polar.csv", polar_csv(*rep.spectral));
    }
    if (rep.edge) detail::write_text_file(dir / "edge.csv", edge_csv(*rep.edge));
}

} // namespace specinf
