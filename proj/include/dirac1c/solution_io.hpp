#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac1c/gridequiv.hpp"
#include "dirac1c/integrate.hpp"
#include "dirac1c/version.hpp"

namespace dirac1c {

using nlohmann::json;

// ---- JSON forms of the configuration types ---------------------------------

inline json rational_to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw ConfigError("rational values must be strings like \"3/4\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

inline json poly_to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms) {
        json t;
        t["powers"] = {int(m[0]), int(m[1]), int(m[2]), int(m[3])};
        t["re"] = rational_to_json(c.re);
        t["im"] = rational_to_json(c.im);
        terms.push_back(t);
    }
    return terms;
}

inline Poly poly_from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("a polynomial must be an array of terms");
    Poly p;
    for (const json& t : j) {
        const json& pw = t.at("powers");
        if (!pw.is_array() || pw.size() != 4)
            throw ConfigError("term powers must be four integers");
        Monomial m{};
        for (int i = 0; i < 4; ++i) {
            int e = pw[size_t(i)].get<int>();
            if (e < 0 || e > 255) throw ConfigError("term power out of range");
            m[size_t(i)] = uint8_t(e);
        }
        RComplex c(rational_from_json(t.at("re")),
                   t.contains("im") ? rational_from_json(t.at("im")) : Rational(0));
        p.terms[m] += c;
    }
    p.prune();
    return p;
}

inline json config_to_json(const FieldConfig& cfg) {
    json j;
    if (cfg.family == FieldConfig::Family::constant_f) {
        j["family"] = "constant-F";
        j["electric"] = json::array();
        j["magnetic"] = json::array();
        for (int i = 0; i < 3; ++i) {
            j["electric"].push_back(rational_to_json(cfg.electric[size_t(i)]));
            j["magnetic"].push_back(rational_to_json(cfg.magnetic[size_t(i)]));
        }
    } else {
        j["family"] = "poly";
        j["potential"] = json::array();
        for (int mu = 0; mu < 4; ++mu)
            j["potential"].push_back(poly_to_json(cfg.potential_poly[size_t(mu)]));
    }
    if (!cfg.description.empty()) j["description"] = cfg.description;
    return j;
}

inline FieldConfig config_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    FieldConfig cfg;
    if (family == "constant-F") {
        auto vec3_field = [&](const char* key, std::array<Rational, 3>& out) {
            if (!j.contains(key)) return;
            const json& a = j.at(key);
            if (!a.is_array() || a.size() != 3)
                throw ConfigError(std::string(key) + " must be three rationals");
            for (int i = 0; i < 3; ++i) out[size_t(i)] = rational_from_json(a[size_t(i)]);
        };
        cfg.family = FieldConfig::Family::constant_f;
        vec3_field("electric", cfg.electric);
        vec3_field("magnetic", cfg.magnetic);
    } else if (family == "poly") {
        const json& pot = j.at("potential");
        if (!pot.is_array() || pot.size() != 4)
            throw ConfigError("potential must list four component polynomials");
        cfg.family = FieldConfig::Family::poly;
        for (int mu = 0; mu < 4; ++mu)
            cfg.potential_poly[size_t(mu)] = poly_from_json(pot[size_t(mu)]);
    } else {
        throw ConfigError("unknown field family '" + family + "'");
    }
    if (j.contains("description")) cfg.description = j.at("description").get<std::string>();
    return cfg;
}

inline json grid_to_json(const GridSpec& g) {
    json init;
    init["family"] = init_family_name(g.init.family);
    init["modes"] = g.init.modes;
    init["seed"] = g.init.seed;
    init["momentum"] = g.init.momentum;
    json j;
    j["nx"] = g.nx;
    j["length"] = g.length;
    j["dt"] = g.dt;
    j["t_final"] = g.t_final;
    j["stencil"] = stencil_name(g.stencil);
    j["init"] = init;
    return j;
}

inline GridSpec grid_from_json(const json& j) {
    GridSpec g;
    g.nx = j.at("nx").get<int>();
    if (j.contains("length")) g.length = j.at("length").get<double>();
    g.dt = j.at("dt").get<double>();
    g.t_final = j.at("t_final").get<double>();
    if (j.contains("stencil"))
        g.stencil = stencil_from_name(j.at("stencil").get<std::string>());
    if (j.contains("init")) {
        const json& init = j.at("init");
        if (init.contains("family"))
            g.init.family = init_family_from_name(init.at("family").get<std::string>());
        if (init.contains("modes"))
            g.init.modes = init.at("modes").get<std::vector<double>>();
        if (init.contains("seed")) g.init.seed = init.at("seed").get<std::uint64_t>();
        if (init.contains("momentum")) g.init.momentum = init.at("momentum").get<double>();
    }
    g.validate();
    return g;
}

inline json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

inline FieldConfig load_config(const std::filesystem::path& path) {
    try {
        return config_from_json(load_json_file(path));
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

inline GridSpec load_grid(const std::filesystem::path& path) {
    try {
        return grid_from_json(load_json_file(path));
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

// ---- binary spinor dumps ----------------------------------------------------
// Layout: row-major [t][x][component], each complex sample as two 64-bit
// little-endian IEEE doubles (re, im).

namespace detail {

inline void put_f64_le(std::vector<unsigned char>& out, double x) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) out.push_back((unsigned char)(bits >> (8 * b)));
}

inline double get_f64_le(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= std::uint64_t(p[b]) << (8 * b);
    return std::bit_cast<double>(bits);
}

}  // namespace detail

inline void write_spinor_field(const std::filesystem::path& path, const SpinorField& f) {
    std::vector<unsigned char> bytes;
    bytes.reserve(f.v.size() * 16);
    for (const DComplex& z : f.v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw PreconditionViolated("refusing to write non-finite samples");
        detail::put_f64_le(bytes, z.real());
        detail::put_f64_le(bytes, z.imag());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
    if (!out) throw ConfigError("short write to " + path.string());
}

inline SpinorField read_spinor_field(const std::filesystem::path& path, int slices,
                                     int nx) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    SpinorField f(slices, nx);
    if (bytes.size() != f.v.size() * 16)
        throw ConfigError(path.string() + " has " + std::to_string(bytes.size()) +
                          " bytes, expected " + std::to_string(f.v.size() * 16));
    for (size_t i = 0; i < f.v.size(); ++i)
        f.v[i] = DComplex(detail::get_f64_le(&bytes[16 * i]),
                          detail::get_f64_le(&bytes[16 * i + 8]));
    return f;
}

// ---- solution directories ----------------------------------------------------

inline const int kSolutionFormatVersion = 1;

inline void write_solution(const std::filesystem::path& dir, const GridSolution& sol) {
    std::filesystem::create_directories(dir);
    write_spinor_field(dir / "psi.bin", sol.psi);

    json meta;
    meta["format"] = {{"name", "dirac1c-solution"},
                      {"version", kSolutionFormatVersion},
                      {"scalar", "float64-le"},
                      {"layout", "row-major [t][x][component], interleaved re,im"}};
    meta["shape"] = {{"slices", sol.psi.slices}, {"nx", sol.psi.nx}, {"components", 4}};
    meta["grid"] = grid_to_json(sol.spec);
    meta["config"] = config_to_json(sol.config);
    meta["seed"] = sol.spec.init.seed;
    meta["code_version"] = library_version();

    std::ofstream out(dir / "meta.json");
    if (!out) throw ConfigError("cannot write " + (dir / "meta.json").string());
    out << meta.dump(2) << "\n";
}

inline GridSolution read_solution(const std::filesystem::path& dir) {
    json meta = load_json_file(dir / "meta.json");
    try {
        const json& format = meta.at("format");
        if (format.at("name").get<std::string>() != "dirac1c-solution")
            throw ConfigError(dir.string() + ": not a solution directory");
        if (format.at("version").get<int>() != kSolutionFormatVersion)
            throw ConfigError(dir.string() + ": unsupported format version");

        GridSolution sol;
        sol.spec = grid_from_json(meta.at("grid"));
        sol.config = config_from_json(meta.at("config"));
        sol.a = grid_potential(sol.config);

        const json& shape = meta.at("shape");
        const int slices = shape.at("slices").get<int>();
        const int nx = shape.at("nx").get<int>();
        if (shape.at("components").get<int>() != 4)
            throw ConfigError(dir.string() + ": expected 4 components per point");
        if (slices != sol.spec.steps() + 1 || nx != sol.spec.nx)
            throw ConfigError(dir.string() + ": shape disagrees with the grid spec");

        sol.psi = read_spinor_field(dir / "psi.bin", slices, nx);
        return sol;
    } catch (const json::exception& e) {
        throw ConfigError(dir.string() + "/meta.json: " + e.what());
    }
}

// ---- CSV exports --------------------------------------------------------------

namespace detail {

inline std::string f64_str(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

inline void write_scalar_csv(const std::filesystem::path& path, const ScalarField& f,
                             const GridSolution& sol, SliceRange range) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "t,x,re,im\n";
    for (int it = range.lo; it <= range.hi; ++it)
        for (int ix = 0; ix < f.nx; ++ix) {
            const DComplex z = f.at(it, ix);
            out << detail::f64_str(sol.t_at(it)) << ',' << detail::f64_str(sol.x_at(ix))
                << ',' << detail::f64_str(z.real()) << ',' << detail::f64_str(z.imag())
                << '\n';
        }
    if (!out) throw ConfigError("short write to " + path.string());
}

inline void write_current_csv(const std::filesystem::path& path, const CurrentField& f,
                              const GridSolution& sol, SliceRange range) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "t,x,j0,j1,j2,j3\n";
    for (int it = range.lo; it <= range.hi; ++it)
        for (int ix = 0; ix < f.nx; ++ix) {
            out << detail::f64_str(sol.t_at(it)) << ',' << detail::f64_str(sol.x_at(ix));
            for (double c : f.at(it, ix)) out << ',' << detail::f64_str(c);
            out << '\n';
        }
    if (!out) throw ConfigError("short write to " + path.string());
}

}  // namespace dirac1c
