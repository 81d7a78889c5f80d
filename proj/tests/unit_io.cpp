#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dirac1c/solution_io.hpp"

using namespace dirac1c;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test, removed on scope exit.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("dirac1c-io-" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

GridSpec small_spec() {
    GridSpec g;
    g.nx = 16;
    g.dt = 0.05;
    g.t_final = 0.5;
    g.stencil = Stencil::central2;
    return g;
}

GridSolution small_solution() {
    FieldConfig cfg = FieldConfig::constant_field({Rational(1, 2), Rational(1, 4), Rational(0)},
                                                  {Rational(0), Rational(0), Rational(0)});
    return integrate_dirac(cfg, small_spec());
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(bool(in));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("rationals serialize as fraction strings") {
    CHECK(rational_to_json(Rational(3, 4)).get<std::string>() == "3/4");
    CHECK(rational_to_json(Rational(-5)).get<std::string>() == "-5");
    CHECK(rational_from_json(json("3/4")) == Rational(3, 4));
    CHECK(rational_from_json(json("-7/2")) == Rational(-7, 2));
    CHECK(rational_from_json(json("0")) == Rational(0));
    CHECK_THROWS_AS(rational_from_json(json(0.75)), ConfigError);
    CHECK_THROWS_AS(rational_from_json(json("3/0")), ConfigError);
    CHECK_THROWS_AS(rational_from_json(json("abc")), ConfigError);
}

TEST_CASE("polynomials round-trip through json") {
    Poly p = Poly::coordinate(0) * Poly::coordinate(1) +
             Poly::constant(RComplex(Rational(2, 3), Rational(-1, 5)));
    Poly q = poly_from_json(poly_to_json(p));
    CHECK(q == p);

    // im defaults to zero when omitted
    json t = json::array({{{"powers", {1, 0, 0, 0}}, {"re", "2"}}});
    Poly lin = poly_from_json(t);
    CHECK(lin == Poly::coordinate(0) * Poly::constant(RComplex(2)));

    CHECK_THROWS_AS(poly_from_json(json::object()), ConfigError);
    json bad = json::array({{{"powers", {1, 0, 0}}, {"re", "2"}}});
    CHECK_THROWS_AS(poly_from_json(bad), ConfigError);
    json neg = json::array({{{"powers", {-1, 0, 0, 0}}, {"re", "2"}}});
    CHECK_THROWS_AS(poly_from_json(neg), ConfigError);
}

TEST_CASE("constant field configs round-trip through json") {
    FieldConfig cfg = FieldConfig::constant_field(
        {Rational(3, 4), Rational(1, 2), Rational(1, 4)},
        {Rational(0), Rational(-2), Rational(5, 3)}, "calibration field");
    FieldConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.family == FieldConfig::Family::constant_f);
    for (int i = 0; i < 3; ++i) {
        CHECK(back.electric[size_t(i)] == cfg.electric[size_t(i)]);
        CHECK(back.magnetic[size_t(i)] == cfg.magnetic[size_t(i)]);
    }
    CHECK(back.description == "calibration field");

    // omitted blocks default to zero
    FieldConfig sparse = config_from_json(json{{"family", "constant-F"}});
    for (int i = 0; i < 3; ++i) {
        CHECK(sparse.electric[size_t(i)] == Rational(0));
        CHECK(sparse.magnetic[size_t(i)] == Rational(0));
    }
}

TEST_CASE("polynomial field configs round-trip through json") {
    PolyVec4 a;
    a[0] = Poly::coordinate(1) * Poly::constant(RComplex(Rational(1, 2), Rational(0)));
    a[3] = Poly::coordinate(0) + Poly::constant(RComplex(Rational(0), Rational(1)));
    FieldConfig cfg = FieldConfig::polynomial_field(a, "linear potential");
    FieldConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.family == FieldConfig::Family::poly);
    for (int mu = 0; mu < 4; ++mu)
        CHECK(back.potential_poly[size_t(mu)] == cfg.potential_poly[size_t(mu)]);
    CHECK(back.description == "linear potential");
}

TEST_CASE("malformed field configs are rejected") {
    CHECK_THROWS_AS(config_from_json(json{{"family", "plane-wave"}}), ConfigError);
    json short_e{{"family", "constant-F"}, {"electric", {"1", "2"}}};
    CHECK_THROWS_AS(config_from_json(short_e), ConfigError);
    json short_pot{{"family", "poly"}, {"potential", json::array()}};
    CHECK_THROWS_AS(config_from_json(short_pot), ConfigError);
}

TEST_CASE("grid specs round-trip through json") {
    GridSpec g;
    g.nx = 48;
    g.length = 4.0;
    g.dt = 0.01;
    g.t_final = 0.2;
    g.stencil = Stencil::spectral;
    g.init.family = InitSpec::Family::plane_wave;
    g.init.modes = {3};
    g.init.seed = 99;
    g.init.momentum = 2.5;

    GridSpec back = grid_from_json(grid_to_json(g));
    CHECK(back.nx == g.nx);
    CHECK(back.length == g.length);
    CHECK(back.dt == g.dt);
    CHECK(back.t_final == g.t_final);
    CHECK(back.stencil == g.stencil);
    CHECK(back.init.family == g.init.family);
    CHECK(back.init.modes == g.init.modes);
    CHECK(back.init.seed == g.init.seed);
    CHECK(back.init.momentum == g.init.momentum);
}

TEST_CASE("grid json applies defaults and validates") {
    json j{{"nx", 32}, {"dt", 0.025}, {"t_final", 1.0}};
    GridSpec g = grid_from_json(j);
    CHECK(g.length == doctest::Approx(6.283185307179586).epsilon(1e-15));
    CHECK(g.stencil == Stencil::central4);
    CHECK(g.init.family == InitSpec::Family::modes);
    CHECK(g.init.seed == 7);

    json tiny{{"nx", 4}, {"dt", 0.025}, {"t_final", 1.0}};
    CHECK_THROWS_AS(grid_from_json(tiny), ConfigError);
    json ragged{{"nx", 32}, {"dt", 0.3}, {"t_final", 1.0}};
    CHECK_THROWS_AS(grid_from_json(ragged), ConfigError);
}

TEST_CASE("binary spinor dumps are bit-exact round trips") {
    TempDir tmp("spinor");
    SpinorField f(3, 5);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-10, 10);
    for (DComplex& z : f.v) z = DComplex(u(rng), u(rng));
    // a few awkward but finite values
    f.v[0] = DComplex(0.0, -0.0);
    f.v[1] = DComplex(1e-308, 1e308);

    const fs::path bin = tmp.path / "psi.bin";
    write_spinor_field(bin, f);
    CHECK(fs::file_size(bin) == f.v.size() * 16);
    SpinorField g = read_spinor_field(bin, 3, 5);
    for (size_t i = 0; i < f.v.size(); ++i) {
        CHECK(std::bit_cast<std::uint64_t>(g.v[i].real()) ==
              std::bit_cast<std::uint64_t>(f.v[i].real()));
        CHECK(std::bit_cast<std::uint64_t>(g.v[i].imag()) ==
              std::bit_cast<std::uint64_t>(f.v[i].imag()));
    }
}

TEST_CASE("non-finite samples are refused at write time") {
    TempDir tmp("nan");
    SpinorField f(1, 2);
    f.v[3] = DComplex(std::nan(""), 0.0);
    CHECK_THROWS_AS(write_spinor_field(tmp.path / "bad.bin", f), PreconditionViolated);
    f.v[3] = DComplex(0.0, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(write_spinor_field(tmp.path / "bad.bin", f), PreconditionViolated);
}

TEST_CASE("binary reads reject size mismatches") {
    TempDir tmp("size");
    SpinorField f(2, 4);
    const fs::path bin = tmp.path / "psi.bin";
    write_spinor_field(bin, f);
    CHECK_THROWS_AS(read_spinor_field(bin, 2, 5), ConfigError);
    CHECK_THROWS_AS(read_spinor_field(tmp.path / "missing.bin", 2, 4), ConfigError);
}

TEST_CASE("solution directories round-trip") {
    TempDir tmp("sol");
    GridSolution sol = small_solution();
    write_solution(tmp.path, sol);
    CHECK(fs::exists(tmp.path / "psi.bin"));
    CHECK(fs::exists(tmp.path / "meta.json"));

    GridSolution back = read_solution(tmp.path);
    CHECK(back.psi.slices == sol.psi.slices);
    CHECK(back.psi.nx == sol.psi.nx);
    for (size_t i = 0; i < sol.psi.v.size(); ++i) CHECK(back.psi.v[i] == sol.psi.v[i]);
    CHECK(back.spec.nx == sol.spec.nx);
    CHECK(back.spec.dt == sol.spec.dt);
    CHECK(back.spec.stencil == sol.spec.stencil);
    CHECK(back.config.family == sol.config.family);
    for (int i = 0; i < 3; ++i) {
        CHECK(back.config.electric[size_t(i)] == sol.config.electric[size_t(i)]);
        CHECK(back.config.magnetic[size_t(i)] == sol.config.magnetic[size_t(i)]);
    }
    // the stored potential is re-derived, not re-read
    for (int mu = 0; mu < 4; ++mu) CHECK(back.a[size_t(mu)] == sol.a[size_t(mu)]);
}

TEST_CASE("tampered metadata is rejected") {
    TempDir tmp("meta");
    GridSolution sol = small_solution();
    write_solution(tmp.path, sol);
    json meta = load_json_file(tmp.path / "meta.json");

    auto rewrite = [&](const json& m) {
        std::ofstream out(tmp.path / "meta.json");
        out << m.dump(2) << "\n";
    };

    json wrong_name = meta;
    wrong_name["format"]["name"] = "other";
    rewrite(wrong_name);
    CHECK_THROWS_AS(read_solution(tmp.path), ConfigError);

    json wrong_version = meta;
    wrong_version["format"]["version"] = kSolutionFormatVersion + 1;
    rewrite(wrong_version);
    CHECK_THROWS_AS(read_solution(tmp.path), ConfigError);

    json wrong_shape = meta;
    wrong_shape["shape"]["slices"] = sol.psi.slices + 1;
    rewrite(wrong_shape);
    CHECK_THROWS_AS(read_solution(tmp.path), ConfigError);

    json no_grid = meta;
    no_grid.erase("grid");
    rewrite(no_grid);
    CHECK_THROWS_AS(read_solution(tmp.path), ConfigError);

    rewrite(meta);
    CHECK_NOTHROW(read_solution(tmp.path));
}

TEST_CASE("parse errors carry the file name") {
    TempDir tmp("parse");
    const fs::path bad = tmp.path / "bad.json";
    std::ofstream(bad) << "{ not json";
    try {
        load_json_file(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config(tmp.path / "missing.json"), ConfigError);
    CHECK_THROWS_AS(load_grid(bad), ConfigError);
}

TEST_CASE("scalar csv lists t,x and both components") {
    TempDir tmp("csv");
    GridSolution sol = small_solution();
    ScalarField f(sol.psi.slices, sol.spec.nx);
    for (int it = 0; it < f.slices; ++it)
        for (int ix = 0; ix < f.nx; ++ix)
            f.at(it, ix) = DComplex(it + 0.5, ix - 2.0);

    const fs::path csv = tmp.path / "phi.csv";
    write_scalar_csv(csv, f, sol, SliceRange{1, 2});
    auto lines = read_lines(csv);
    REQUIRE(lines.size() == size_t(1 + 2 * sol.spec.nx));
    CHECK(lines[0] == "t,x,re,im");

    std::istringstream row(lines[1]);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 4);
    CHECK(vals[0] == sol.t_at(1));
    CHECK(vals[1] == sol.x_at(0));
    CHECK(vals[2] == 1.5);
    CHECK(vals[3] == -2.0);
}

TEST_CASE("current csv lists t,x and four components") {
    TempDir tmp("jcsv");
    GridSolution sol = small_solution();
    CurrentField f(sol.psi.slices, sol.spec.nx);
    for (int it = 0; it < f.slices; ++it)
        for (int ix = 0; ix < f.nx; ++ix)
            f.at(it, ix) = {1.0 * it, 2.0 * ix, 3.0, 4.0};

    const fs::path csv = tmp.path / "j.csv";
    write_current_csv(csv, f, sol, SliceRange{0, 0});
    auto lines = read_lines(csv);
    REQUIRE(lines.size() == size_t(1 + sol.spec.nx));
    CHECK(lines[0] == "t,x,j0,j1,j2,j3");

    std::istringstream row(lines[2]);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 6);
    CHECK(vals[0] == sol.t_at(0));
    CHECK(vals[1] == sol.x_at(1));
    CHECK(vals[2] == 0.0);
    CHECK(vals[3] == 2.0);
    CHECK(vals[4] == 3.0);
    CHECK(vals[5] == 4.0);
}
