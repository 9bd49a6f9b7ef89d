#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "specinf/dispersion.hpp"
#include "specinf/errors.hpp"
#include "specinf/grid.hpp"
#include "specinf/hamiltonian.hpp"
#include "specinf/lanczos.hpp"
#include "specinf/oracle.hpp"
#include "specinf/radial_function.hpp"

// Run configuration: flat key/value sections, strict schema (unknown sections
// or keys are rejected with their line number), canonical serializer whose
// output re-parses to an equal RunConfig.

namespace specinf {

struct TermConfig {
    std::vector<Vec> basis;
    std::string kind;
    double value = 0.0;
    double depth = 0.0;
    double width = 1.0;
    Vec center;
    double radius = 1.0;
    double amplitude = 0.0;
    Vec direction;
    double low = 0.0;
    double high = 0.0;
    double scale = 1.0;
    Vec weights;
    std::string table_file;
    double cutoff_radius = 1.0;
};

struct RunConfig {
    int dim = 1;

    std::string disp_kind = "quadratic";
    std::vector<int> blocks;
    std::vector<double> masses;
    std::string poly_terms;

    std::vector<TermConfig> terms;

    double L = 16.0;
    int n = 256;

    int budget = 64;

    double tol = 1e-10;
    int max_iter = 800;

    bool edge_enabled = true;
    int edge_f1 = 1;
    int edge_f2 = 2;
    double edge_mesh = 0.01;
    double edge_threshold = 0.5;
    double edge_span = 6.0;
    int edge_n = 0;

    std::uint64_t seed = 7;
    int jobs = 1;
    double hvz_tol = 0.05;
    bool refine_check = false;
    double selfcheck_scale = 1.0;

    std::string out_dir = "out";

    Vec loc_direction;
    std::vector<Vec> chain;
    Vec point;
    bool has_point = false;
};

namespace detail {

inline bool vec_eq(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

inline bool cols_eq(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!vec_eq(a[i], b[i])) return false;
    return true;
}

} // namespace detail

inline bool operator==(const TermConfig& a, const TermConfig& b) {
    return detail::cols_eq(a.basis, b.basis) && a.kind == b.kind && a.value == b.value &&
           a.depth == b.depth && a.width == b.width && detail::vec_eq(a.center, b.center) &&
           a.radius == b.radius && a.amplitude == b.amplitude &&
           detail::vec_eq(a.direction, b.direction) && a.low == b.low && a.high == b.high &&
           a.scale == b.scale && detail::vec_eq(a.weights, b.weights) &&
           a.table_file == b.table_file && a.cutoff_radius == b.cutoff_radius;
}

inline bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.dim == b.dim && a.disp_kind == b.disp_kind && a.blocks == b.blocks &&
           a.masses == b.masses && a.poly_terms == b.poly_terms && a.terms == b.terms &&
           a.L == b.L && a.n == b.n && a.budget == b.budget && a.tol == b.tol &&
           a.max_iter == b.max_iter && a.edge_enabled == b.edge_enabled &&
           a.edge_f1 == b.edge_f1 && a.edge_f2 == b.edge_f2 && a.edge_mesh == b.edge_mesh &&
           a.edge_threshold == b.edge_threshold && a.edge_span == b.edge_span &&
           a.edge_n == b.edge_n && a.seed == b.seed && a.jobs == b.jobs &&
           a.hvz_tol == b.hvz_tol && a.refine_check == b.refine_check &&
           a.selfcheck_scale == b.selfcheck_scale &&
           a.out_dir == b.out_dir && detail::vec_eq(a.loc_direction, b.loc_direction) &&
           detail::cols_eq(a.chain, b.chain) && detail::vec_eq(a.point, b.point) &&
           a.has_point == b.has_point;
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

inline double cfg_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'", line);
    }
}

inline long long cfg_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'", line);
    }
}

inline std::uint64_t cfg_uint(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected a nonnegative integer, got '" + v + "'", line);
    }
}

inline bool cfg_bool(const std::string& v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("expected true or false, got '" + v + "'", line);
}

inline Vec cfg_vec(const std::string& v, int line) {
    std::istringstream in(v);
    std::vector<double> xs;
    std::string tok;
    while (in >> tok) xs.push_back(cfg_double(tok, line));
    Vec out(int(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) out[int(i)] = xs[i];
    return out;
}

inline std::vector<Vec> cfg_cols(const std::string& v, int line) {
    std::vector<Vec> cols;
    if (trim(v).empty()) return cols;
    for (const std::string& part : split_on(v, ';')) cols.push_back(cfg_vec(part, line));
    return cols;
}

struct RawKV {
    std::string value;
    int line;
};

} // namespace detail

inline RunConfig parse_config(const std::string& text) {
    RunConfig c;
    bool saw_dim = false, saw_L = false, saw_n = false;

    static const std::map<std::string, std::set<std::string>> schema = {
        {"space", {"dim"}},
        {"dispersion", {"kind", "blocks", "masses", "terms"}},
        {"grid", {"L", "n"}},
        {"sampler", {"budget"}},
        {"lanczos", {"tol", "max_iter"}},
        {"edge", {"enabled", "factors", "mesh", "threshold", "span", "n"}},
        {"run", {"seed", "jobs", "hvz_tol", "refine_check", "selfcheck_scale"}},
        {"output", {"dir"}},
        {"localize", {"direction"}},
        {"character", {"chain", "point"}},
    };
    static const std::set<std::string> term_keys = {
        "basis",  "kind", "value", "depth",     "width", "center", "radius",
        "amplitude", "direction", "low", "high", "scale", "weights", "file",
    };

    std::map<int, std::map<std::string, detail::RawKV>> term_raw;
    std::set<std::string> seen;   // "section.key" duplicates

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int term_index = -1;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = detail::trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("unterminated section header", line);
            section = detail::trim(s.substr(1, s.size() - 2));
            term_index = -1;
            if (section.rfind("term.", 0) == 0) {
                long long idx = detail::cfg_int(section.substr(5), line);
                if (idx < 1) throw ConfigError("term index must be >= 1", line);
                if (term_raw.count(int(idx))) throw ConfigError("duplicate section [" + section + "]", line);
                term_raw[int(idx)];
                term_index = int(idx);
            } else if (!schema.count(section)) {
                throw ConfigError("unknown section [" + section + "]", line);
            }
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line);
        if (section.empty()) throw ConfigError("key outside any section", line);
        std::string key = detail::trim(s.substr(0, eq));
        std::string val = detail::trim(s.substr(eq + 1));

        if (term_index > 0) {
            if (!term_keys.count(key))
                throw ConfigError("unknown key '" + key + "' in [" + section + "]", line);
            if (term_raw[term_index].count(key))
                throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line);
            term_raw[term_index][key] = {val, line};
            continue;
        }

        if (!schema.at(section).count(key))
            throw ConfigError("unknown key '" + key + "' in [" + section + "]", line);
        if (!seen.insert(section + "." + key).second)
            throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line);

        if (section == "space") {
            c.dim = int(detail::cfg_int(val, line));
            saw_dim = true;
        } else if (section == "dispersion") {
            if (key == "kind") c.disp_kind = val;
            else if (key == "blocks") {
                for (const std::string& p : detail::split_on(val, ','))
                    c.blocks.push_back(int(detail::cfg_int(p, line)));
            } else if (key == "masses") {
                for (const std::string& p : detail::split_on(val, ','))
                    c.masses.push_back(detail::cfg_double(p, line));
            } else {
                c.poly_terms = val;
            }
        } else if (section == "grid") {
            if (key == "L") { c.L = detail::cfg_double(val, line); saw_L = true; }
            else { c.n = int(detail::cfg_int(val, line)); saw_n = true; }
        } else if (section == "sampler") {
            c.budget = int(detail::cfg_int(val, line));
        } else if (section == "lanczos") {
            if (key == "tol") c.tol = detail::cfg_double(val, line);
            else c.max_iter = int(detail::cfg_int(val, line));
        } else if (section == "edge") {
            if (key == "enabled") c.edge_enabled = detail::cfg_bool(val, line);
            else if (key == "factors") {
                auto parts = detail::split_on(val, ',');
                if (parts.size() != 2) throw ConfigError("factors wants two integers", line);
                c.edge_f1 = int(detail::cfg_int(parts[0], line));
                c.edge_f2 = int(detail::cfg_int(parts[1], line));
            } else if (key == "mesh") c.edge_mesh = detail::cfg_double(val, line);
            else if (key == "threshold") c.edge_threshold = detail::cfg_double(val, line);
            else if (key == "span") c.edge_span = detail::cfg_double(val, line);
            else c.edge_n = int(detail::cfg_int(val, line));
        } else if (section == "run") {
            if (key == "seed") c.seed = detail::cfg_uint(val, line);
            else if (key == "jobs") c.jobs = int(detail::cfg_int(val, line));
            else if (key == "hvz_tol") c.hvz_tol = detail::cfg_double(val, line);
            else if (key == "selfcheck_scale") c.selfcheck_scale = detail::cfg_double(val, line);
            else c.refine_check = detail::cfg_bool(val, line);
        } else if (section == "output") {
            c.out_dir = val;
        } else if (section == "localize") {
            c.loc_direction = detail::cfg_vec(val, line);
        } else if (section == "character") {
            if (key == "chain") c.chain = detail::cfg_cols(val, line);
            else { c.point = detail::cfg_vec(val, line); c.has_point = true; }
        }
    }

    if (!saw_dim) throw ConfigError("missing required key 'dim' in [space]");
    if (!saw_L) throw ConfigError("missing required key 'L' in [grid]");
    if (!saw_n) throw ConfigError("missing required key 'n' in [grid]");

    int expect = 1;
    for (const auto& [idx, kvs] : term_raw) {
        if (idx != expect)
            throw ConfigError("term sections must be numbered consecutively from 1; found term." +
                              std::to_string(idx));
        ++expect;
        TermConfig t;
        auto get = [&](const char* k) -> const detail::RawKV* {
            auto it = kvs.find(k);
            return it == kvs.end() ? nullptr : &it->second;
        };
        auto need = [&](const char* k) -> const detail::RawKV& {
            const detail::RawKV* p = get(k);
            if (!p)
                throw ConfigError("term." + std::to_string(idx) + " (" + t.kind +
                                  ") is missing key '" + k + "'");
            return *p;
        };
        const detail::RawKV* kindp = get("kind");
        if (!kindp) throw ConfigError("term." + std::to_string(idx) + " is missing key 'kind'");
        t.kind = kindp->value;
        if (const detail::RawKV* b = get("basis")) t.basis = detail::cfg_cols(b->value, b->line);

        std::set<std::string> allowed = {"kind", "basis"};
        if (t.kind == "constant") {
            allowed.insert("value");
            t.value = detail::cfg_double(need("value").value, need("value").line);
        } else if (t.kind == "gaussian_well") {
            allowed.insert({"depth", "width"});
            t.depth = detail::cfg_double(need("depth").value, need("depth").line);
            t.width = detail::cfg_double(need("width").value, need("width").line);
        } else if (t.kind == "compact_bump") {
            allowed.insert({"center", "radius", "amplitude"});
            t.center = detail::cfg_vec(need("center").value, need("center").line);
            t.radius = detail::cfg_double(need("radius").value, need("radius").line);
            t.amplitude = detail::cfg_double(need("amplitude").value, need("amplitude").line);
        } else if (t.kind == "smooth_step") {
            allowed.insert({"direction", "low", "high", "scale"});
            t.direction = detail::cfg_vec(need("direction").value, need("direction").line);
            t.low = detail::cfg_double(need("low").value, need("low").line);
            t.high = detail::cfg_double(need("high").value, need("high").line);
            if (const detail::RawKV* s = get("scale")) t.scale = detail::cfg_double(s->value, s->line);
        } else if (t.kind == "angular_profile") {
            allowed.insert({"weights", "file", "radius"});
            t.cutoff_radius = detail::cfg_double(need("radius").value, need("radius").line);
            const detail::RawKV* w = get("weights");
            const detail::RawKV* f = get("file");
            if (!!w == !!f)
                throw ConfigError("term." + std::to_string(idx) +
                                  " (angular_profile) needs exactly one of 'weights' or 'file'");
            if (w) t.weights = detail::cfg_vec(w->value, w->line);
            if (f) t.table_file = f->value;
        } else {
            throw ConfigError("term." + std::to_string(idx) + " has unknown kind '" + t.kind + "'",
                              kindp->line);
        }
        for (const auto& [k, kv] : kvs)
            if (!allowed.count(k))
                throw ConfigError("key '" + k + "' does not belong to kind '" + t.kind + "'",
                                  kv.line);
        c.terms.push_back(std::move(t));
    }
    return c;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace detail {

inline std::string fmt_cfg_vec(const Vec& v) {
    std::string s;
    for (int i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += fmt_g(v[i]);
    }
    return s;
}

inline std::string fmt_cfg_cols(const std::vector<Vec>& cols) {
    std::string s;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) s += "; ";
        s += fmt_cfg_vec(cols[i]);
    }
    return s;
}

} // namespace detail

inline std::string serialize_config(const RunConfig& c) {
    std::ostringstream o;
    o << "[space]\ndim = " << c.dim << "\n\n";
    o << "[dispersion]\nkind = " << c.disp_kind << "\n";
    if (!c.blocks.empty()) {
        o << "blocks = ";
        for (std::size_t i = 0; i < c.blocks.size(); ++i) o << (i ? "," : "") << c.blocks[i];
        o << "\n";
    }
    if (!c.masses.empty()) {
        o << "masses = ";
        for (std::size_t i = 0; i < c.masses.size(); ++i)
            o << (i ? "," : "") << detail::fmt_g(c.masses[i]);
        o << "\n";
    }
    if (!c.poly_terms.empty()) o << "terms = " << c.poly_terms << "\n";
    o << "\n[grid]\nL = " << detail::fmt_g(c.L) << "\nn = " << c.n << "\n";
    o << "\n[sampler]\nbudget = " << c.budget << "\n";
    o << "\n[lanczos]\ntol = " << detail::fmt_g(c.tol) << "\nmax_iter = " << c.max_iter << "\n";
    o << "\n[edge]\nenabled = " << (c.edge_enabled ? "true" : "false") << "\nfactors = "
      << c.edge_f1 << "," << c.edge_f2 << "\nmesh = " << detail::fmt_g(c.edge_mesh)
      << "\nthreshold = " << detail::fmt_g(c.edge_threshold) << "\nspan = "
      << detail::fmt_g(c.edge_span) << "\nn = " << c.edge_n << "\n";
    o << "\n[run]\nseed = " << c.seed << "\njobs = " << c.jobs << "\nhvz_tol = "
      << detail::fmt_g(c.hvz_tol) << "\nrefine_check = " << (c.refine_check ? "true" : "false")
      << "\nselfcheck_scale = " << detail::fmt_g(c.selfcheck_scale) << "\n";
    o << "\n[output]\ndir = " << c.out_dir << "\n";
    if (c.loc_direction.size() > 0)
        o << "\n[localize]\ndirection = " << detail::fmt_cfg_vec(c.loc_direction) << "\n";
    if (!c.chain.empty() || c.has_point) {
        o << "\n[character]\n";
        if (!c.chain.empty()) o << "chain = " << detail::fmt_cfg_cols(c.chain) << "\n";
        if (c.has_point) o << "point = " << detail::fmt_cfg_vec(c.point) << "\n";
    }
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        const TermConfig& t = c.terms[i];
        o << "\n[term." << (i + 1) << "]\nkind = " << t.kind << "\n";
        o << "basis = " << detail::fmt_cfg_cols(t.basis) << "\n";
        if (t.kind == "constant") {
            o << "value = " << detail::fmt_g(t.value) << "\n";
        } else if (t.kind == "gaussian_well") {
            o << "depth = " << detail::fmt_g(t.depth) << "\nwidth = " << detail::fmt_g(t.width)
              << "\n";
        } else if (t.kind == "compact_bump") {
            o << "center = " << detail::fmt_cfg_vec(t.center) << "\nradius = "
              << detail::fmt_g(t.radius) << "\namplitude = " << detail::fmt_g(t.amplitude) << "\n";
        } else if (t.kind == "smooth_step") {
            o << "direction = " << detail::fmt_cfg_vec(t.direction) << "\nlow = "
              << detail::fmt_g(t.low) << "\nhigh = " << detail::fmt_g(t.high) << "\nscale = "
              << detail::fmt_g(t.scale) << "\n";
        } else if (t.kind == "angular_profile") {
            if (t.table_file.empty())
                o << "weights = " << detail::fmt_cfg_vec(t.weights) << "\n";
            else
                o << "file = " << t.table_file << "\n";
            o << "radius = " << detail::fmt_g(t.cutoff_radius) << "\n";
        }
    }
    return o.str();
}

// rows of "d_1 ... d_k value", one sphere sample per line, '#' comments
inline std::vector<std::pair<Vec, double>> load_sphere_table(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sphere table file: " + path);
    std::vector<std::pair<Vec, double>> rows;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = detail::trim(raw);
        if (s.empty()) continue;
        Vec all = detail::cfg_vec(s, line);
        if (int(all.size()) != dim + 1)
            throw ConfigError("sphere table row wants " + std::to_string(dim) +
                              " direction components plus a value", line);
        rows.push_back({all.head(dim), all[dim]});
    }
    return rows;
}

inline Dispersion build_dispersion(const RunConfig& c) {
    if (c.disp_kind == "quadratic") return Dispersion::quadratic(c.dim);
    if (c.disp_kind == "relativistic") return Dispersion::relativistic(c.blocks, c.masses);
    if (c.disp_kind == "polynomial") {
        std::vector<Dispersion::PolyTerm> terms;
        for (const std::string& part : detail::split_on(c.poly_terms, ';')) {
            auto cv = detail::split_on(part, ':');
            if (cv.size() != 2) throw ConfigError("polynomial term wants coeff:e1,...,ed");
            Dispersion::PolyTerm t;
            t.coeff = detail::cfg_double(cv[0], 0);
            for (const std::string& e : detail::split_on(cv[1], ','))
                t.exponents.push_back(int(detail::cfg_int(e, 0)));
            terms.push_back(std::move(t));
        }
        return Dispersion::polynomial(c.dim, terms);
    }
    throw ConfigError("unknown dispersion kind '" + c.disp_kind + "'");
}

inline PotentialTerm build_term(const TermConfig& t, int dim) {
    Subspace Y = t.basis.empty() ? Subspace::zero(dim) : orthonormalize(t.basis, dim);
    int q = Y.codim();
    if (t.kind == "constant") return PotentialTerm(Y, RadialFn::constant(q, t.value));
    if (t.kind == "gaussian_well")
        return PotentialTerm(Y, RadialFn::gaussian_well(q, t.depth, t.width));
    if (t.kind == "compact_bump")
        return PotentialTerm(Y, RadialFn::compact_bump(t.center, t.radius, t.amplitude));
    if (t.kind == "smooth_step")
        return PotentialTerm(Y, RadialFn::smooth_step(t.direction, t.low, t.high, t.scale));
    if (t.kind == "angular_profile") {
        SphereFunction g = t.table_file.empty()
                               ? SphereFunction::linear_form(t.weights)
                               : SphereFunction::sample_table(q, load_sphere_table(t.table_file, q));
        return PotentialTerm(Y, RadialFn::angular_profile(g, t.cutoff_radius));
    }
    throw ConfigError("unknown potential kind '" + t.kind + "'");
}

inline Hamiltonian build_hamiltonian(const RunConfig& c) {
    std::vector<PotentialTerm> terms;
    for (const TermConfig& t : c.terms) terms.push_back(build_term(t, c.dim));
    return Hamiltonian(Space(c.dim), build_dispersion(c), std::move(terms));
}

inline Grid build_grid(const RunConfig& c) { return Grid(c.dim, c.L, c.n); }

inline Grid build_edge_grid(const RunConfig& c) {
    return Grid(c.dim, c.L, c.edge_n > 0 ? c.edge_n : c.n);
}

inline LanczosOptions build_lanczos(const RunConfig& c) {
    LanczosOptions o;
    o.tol = c.tol;
    o.max_iter = c.max_iter;
    o.seed = c.seed;
    return o;
}

inline EdgeOptions build_edge_options(const RunConfig& c) {
    EdgeOptions o;
    o.box_factors = {c.edge_f1, c.edge_f2};
    o.mesh = c.edge_mesh;
    o.growth_threshold = c.edge_threshold;
    o.scan_span = c.edge_span;
    return o;
}

// semantic validation beyond the grammar; throws ConfigError so the CLI can
// map every config problem to the same exit code
inline void validate_config(const RunConfig& c) {
    if (c.dim < 1) throw ConfigError("space dim must be >= 1");
    if (c.L <= 0) throw ConfigError("grid L must be positive");
    if (c.n < 8 || !fft::is_pow2(std::size_t(c.n)))
        throw ConfigError("grid n must be a power of two, n >= 8");
    if (c.budget < 1) throw ConfigError("sampler budget must be >= 1");
    if (c.tol <= 0) throw ConfigError("lanczos tol must be positive");
    if (c.max_iter < 1) throw ConfigError("lanczos max_iter must be >= 1");
    if (c.edge_f1 < 1 || c.edge_f2 <= c.edge_f1)
        throw ConfigError("edge factors must be increasing positive integers");
    if (c.edge_mesh <= 0 || c.edge_threshold <= 0 || c.edge_span <= 0)
        throw ConfigError("edge mesh, threshold and span must be positive");
    if (c.edge_n != 0 && c.edge_n < 8) throw ConfigError("edge n must be 0 (inherit) or >= 8");
    if (c.jobs < 1) throw ConfigError("run jobs must be >= 1");
    if (c.hvz_tol <= 0) throw ConfigError("run hvz_tol must be positive");
    if (c.selfcheck_scale <= 0) throw ConfigError("run selfcheck_scale must be positive");
    if (c.out_dir.empty()) throw ConfigError("output dir must not be empty");
    try {
        build_grid(c);
        Hamiltonian H = build_hamiltonian(c);
        (void)H;
        if (c.loc_direction.size() > 0) {
            Direction dir(c.loc_direction);
            (void)dir;
        }
        if (!c.chain.empty() || c.has_point) {
            std::vector<Direction> dirs;
            for (const Vec& v : c.chain) dirs.emplace_back(v);
            DirectionChain ch(c.dim, dirs);
            if (!c.has_point) throw ConfigError("[character] needs a point");
            if (int(c.point.size()) != c.dim - ch.length())
                throw ConfigError("[character] point wants " +
                                  std::to_string(c.dim - ch.length()) + " coordinates");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

} // namespace specinf
