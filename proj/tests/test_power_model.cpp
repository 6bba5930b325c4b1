#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "wb/csvio.hpp"
#include "wb/errors.hpp"
#include "wb/power_model.hpp"

using namespace wb;

static std::string data_dir() {
    const char* d = std::getenv("WB_DATA_DIR");
    REQUIRE(d != nullptr);
    return d;
}

static std::string tmp_dir() {
    const char* d = std::getenv("WB_TMP_DIR");
    return d ? d : std::filesystem::temp_directory_path().string();
}

// Small hand-built library used by the arithmetic tests.
static TechLibrary toy_lib() {
    TechLibrary lib;
    lib.name = "toy";
    CellSpec inv;
    inv.name = "inv";
    inv.area = {100.0, 60.0};
    inv.leak = {2.0, 0.5};
    inv.switch_fj = {4.0, 1.0};
    inv.cml_bias = {30.0, 10.0};
    inv.cml_ripple = 0.05;
    CellSpec nand2 = inv;
    nand2.name = "nand2";
    nand2.area = {200.0, 120.0};
    nand2.leak = {3.0, 0.75};
    nand2.switch_fj = {6.0, 1.5};
    nand2.cml_bias = {50.0, 16.0};
    lib.cells["inv"] = inv;
    lib.cells["nand2"] = nand2;
    lib.cml_area_factor = {1.5, 1.25};
    return lib;
}

static ModuleInventory toy_module(const std::string& name, Style style, long long n_inv,
                                  long long n_nand) {
    ModuleInventory m;
    m.name = name;
    m.style = style;
    if (n_inv) m.counts.push_back({"inv", n_inv});
    if (n_nand) m.counts.push_back({"nand2", n_nand});
    return m;
}

TEST_CASE("area and power arithmetic") {
    const TechLibrary lib = toy_lib();
    const ModuleInventory sl = toy_module("m_sl", Style::SL, 3, 2);
    // cmos: 3*100 + 2*200 = 700; tfet: 3*60 + 2*120 = 420
    CHECK(estimate_area(sl, lib, Tech::MOSFET) == 700.0);
    CHECK(estimate_area(sl, lib, Tech::TFET) == 420.0);
    // SL power at activity 1: count * (leak + switch_fj/1000)
    // cmos: 3*(2+0.004) + 2*(3+0.006) = 6.012 + 6.012 = 12.024
    CHECK(estimate_avg_power(sl, lib, Tech::MOSFET, 1.0) == doctest::Approx(12.024).epsilon(1e-12));
    // activity 0 leaves pure leakage
    CHECK(estimate_avg_power(sl, lib, Tech::MOSFET, 0.0) == doctest::Approx(12.0).epsilon(1e-12));
    CHECK_THROWS_AS(estimate_avg_power(sl, lib, Tech::MOSFET, -0.5), ConfigError);

    const ModuleInventory cml = toy_module("m_cml", Style::CML, 3, 2);
    // CML area scales by the style factor
    CHECK(estimate_area(cml, lib, Tech::MOSFET) == doctest::Approx(700.0 * 1.5).epsilon(1e-12));
    CHECK(estimate_area(cml, lib, Tech::TFET) == doctest::Approx(420.0 * 1.25).epsilon(1e-12));
    // CML power is the constant bias, independent of activity
    CHECK(estimate_avg_power(cml, lib, Tech::MOSFET, 1.0) ==
          doctest::Approx(3 * 30.0 + 2 * 50.0).epsilon(1e-12));
    CHECK(estimate_avg_power(cml, lib, Tech::MOSFET, 0.0) ==
          estimate_avg_power(cml, lib, Tech::MOSFET, 7.0));

    ModuleInventory bad = toy_module("m_bad", Style::SL, 1, 0);
    bad.counts.push_back({"xor9", 1});
    CHECK_THROWS_AS(estimate_area(bad, lib, Tech::MOSFET), DataError);
}

TEST_CASE("estimates are additive over disjoint inventories") {
    const TechLibrary lib = toy_lib();
    const ModuleInventory a = toy_module("a", Style::SL, 5, 0);
    const ModuleInventory b = toy_module("b", Style::SL, 0, 7);
    const ModuleInventory ab = toy_module("ab", Style::SL, 5, 7);
    for (Tech t : {Tech::MOSFET, Tech::TFET}) {
        CHECK(estimate_area(ab, lib, t) ==
              doctest::Approx(estimate_area(a, lib, t) + estimate_area(b, lib, t)).epsilon(1e-15));
        CHECK(estimate_avg_power(ab, lib, t, 0.7) ==
              doctest::Approx(estimate_avg_power(a, lib, t, 0.7) +
                              estimate_avg_power(b, lib, t, 0.7))
                  .epsilon(1e-15));
    }
}

TEST_CASE("relative table is invariant under uniform per-technology scaling") {
    const TechLibrary lib = toy_lib();
    TechLibrary scaled = lib;
    for (auto& [name, cell] : scaled.cells) {
        cell.area[0] *= 3.0;
        cell.leak[0] *= 3.0;
        cell.switch_fj[0] *= 3.0;
        cell.cml_bias[0] *= 3.0;
    }
    const std::vector<ModuleInventory> mods = {toy_module("x", Style::SL, 4, 1),
                                               toy_module("y", Style::CML, 2, 6)};
    const ModuleInventory ref = toy_module("ref", Style::SL, 1, 1);
    const auto t1 = relative_table(mods, ref, lib);
    const auto t2 = relative_table(mods, ref, scaled);
    REQUIRE(t1.size() == t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i) {
        for (int c = 0; c < 2; ++c) {
            CHECK(t1[i].area_ratio[std::size_t(c)] ==
                  doctest::Approx(t2[i].area_ratio[std::size_t(c)]).epsilon(1e-12));
            CHECK(t1[i].power_ratio[std::size_t(c)] ==
                  doctest::Approx(t2[i].power_ratio[std::size_t(c)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("bundled data loads and is internally consistent") {
    const DataContext ctx = load_data(data_dir());
    CHECK(ctx.lib.cells.size() >= 30);
    CHECK(ctx.modules.size() >= 30);
    CHECK(ctx.ref.sbox.size() == 4);
    CHECK(ctx.ref.crypto_ratios.size() == 5);
    CHECK(ctx.ref.pipeline.size() == 20);
    CHECK(ctx.ref.trojan.size() == 2);
    CHECK_THROWS_AS(ctx.module("no_such_module"), DataError);
}

TEST_CASE("bundled library reproduces every reference value") {
    const DataContext ctx = load_data(data_dir());
    const auto rows = compare_reference(ctx, 1e-6);
    CHECK(rows.size() >= 100);
    double worst = 0.0;
    for (const auto& r : rows) {
        CHECK(!r.flagged);
        worst = std::max(worst, r.rel_dev);
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("tfet never costs more than cmos for any bundled module") {
    const DataContext ctx = load_data(data_dir());
    for (const auto& [name, inv] : ctx.modules) {
        CHECK(estimate_area(inv, ctx.lib, Tech::TFET) <=
              estimate_area(inv, ctx.lib, Tech::MOSFET));
        CHECK(estimate_avg_power(inv, ctx.lib, Tech::TFET) <=
              estimate_avg_power(inv, ctx.lib, Tech::MOSFET));
    }
}

TEST_CASE("library loader rejects malformed files") {
    const std::string dir = tmp_dir();
    const std::string lib_path = dir + "/bad_lib.txt";

    atomic_write(lib_path, "format = 1\n[library]\nname = x\ntechnologies = cmos,tfet\n"
                           "[cell.inv]\narea.cmos = 100\n"); // missing fields
    CHECK_THROWS_AS(load_tech_library(lib_path), DataError);

    atomic_write(lib_path, "[library]\nname = x\n"); // missing format
    CHECK_THROWS_AS(load_tech_library(lib_path), DataError);

    atomic_write(lib_path, "format = 1\n[library]\nname = x\ntechnologies = cmos,tfet\n"
                           "frobnicate = yes\n"); // unknown key
    CHECK_THROWS_AS(load_tech_library(lib_path), DataError);

    CHECK_THROWS_AS(load_tech_library(dir + "/does_not_exist.txt"), DataError);

    // modules referencing unknown cells are rejected against the real library
    const TechLibrary lib = load_tech_library(data_dir() + std::string("/tech_library.txt"));
    const std::string mod_path = dir + "/bad_modules.txt";
    atomic_write(mod_path, "format = 1\n[module.m]\nstyle = sl\ncells = unobtanium:4\n");
    CHECK_THROWS_AS(load_modules(mod_path, lib), DataError);
}
