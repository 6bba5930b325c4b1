#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wb/device_model.hpp"
#include "wb/power_model.hpp"
#include "wb/errors.hpp"

using namespace wb;

TEST_CASE("technology names parse and round-trip") {
    CHECK(tech_from_string("tfet") == Tech::TFET);
    CHECK(tech_from_string("mosfet") == Tech::MOSFET);
    CHECK(tech_from_string("cmos") == Tech::MOSFET); // data files use the cmos column
    CHECK(tech_from_string("TFET") == Tech::TFET);
    CHECK_THROWS_AS(tech_from_string("finfet"), ConfigError);
    CHECK(tech_name(Tech::TFET) == std::string("tfet"));
    CHECK(tech_data_name(Tech::MOSFET) == std::string("cmos"));
    CHECK(tech_col(Tech::MOSFET) == 0);
    CHECK(tech_col(Tech::TFET) == 1);
}

TEST_CASE("default parameter sets") {
    const DeviceParams t = tfet_defaults();
    CHECK(t.vdd == 0.3);
    CHECK(t.ss == 30.0);
    CHECK(t.i_off == 1e-12);
    CHECK(t.i_on == 1e-5);
    const DeviceParams m = mosfet_defaults();
    CHECK(m.vdd == 0.6);
    CHECK(m.ss == 60.0);
    CHECK(m.i_off == 1e-10);
    CHECK(m.i_on == 1e-4);
    CHECK_NOTHROW(validate(t));
    CHECK_NOTHROW(validate(m));
}

TEST_CASE("drain current follows the exponential-then-plateau law") {
    const DeviceParams t = tfet_defaults();
    // v_gs = 0 gives the off current exactly
    CHECK(drain_current(t, 0.0) == t.i_off);
    // one decade per ss millivolts: 30 mV -> 10x
    CHECK(drain_current(t, 0.030) == doctest::Approx(1e-11).epsilon(1e-12));
    CHECK(drain_current(t, 0.060) == doctest::Approx(1e-10).epsilon(1e-12));
    // above v_on the current saturates at i_on
    CHECK(t.v_on() == doctest::Approx(0.21).epsilon(1e-12));
    CHECK(drain_current(t, 0.25) == t.i_on);
    CHECK(drain_current(t, t.vdd) == t.i_on);
    // monotone non-decreasing over the sweep range
    double prev = -1.0;
    for (int i = 0; i <= 300; ++i) {
        const double v = t.vdd * i / 300.0;
        const double c = drain_current(t, v);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK_THROWS_AS(drain_current(t, -0.01), ConfigError);
    CHECK_THROWS_AS(drain_current(t, t.vdd + 0.01), ConfigError);
}

TEST_CASE("measured sub-threshold slope equals the configured slope") {
    const DeviceParams t = tfet_defaults();
    CHECK(subthreshold_slope(t, 0.01, 0.02) == doctest::Approx(30.0).epsilon(1e-9));
    const DeviceParams m = mosfet_defaults();
    CHECK(subthreshold_slope(m, 0.05, 0.2) == doctest::Approx(60.0).epsilon(1e-9));
    // both points must sit inside the exponential region, ordered
    CHECK_THROWS_AS(subthreshold_slope(t, 0.02, 0.02), ConfigError);
    CHECK_THROWS_AS(subthreshold_slope(t, 0.1, 0.25), ConfigError); // beyond v_on
}

TEST_CASE("thermionic limit at room temperature") {
    // (kT/q) ln(10), in mV/dec
    const double lim = thermionic_limit_mv_per_dec(300.0);
    CHECK(lim == doctest::Approx(59.5265).epsilon(1e-4));
    CHECK(tfet_defaults().ss < lim);          // below the limit: the tunneling premise
    CHECK(mosfet_defaults().ss >= lim);       // conventional device respects it
}

TEST_CASE("steepness doubling halves the turn-on voltage at equal current ratio") {
    DeviceParams twice = mosfet_defaults();
    twice.i_on = 1e-5;
    twice.i_off = 1e-12; // same 1e7 ratio as the TFET defaults
    const DeviceParams t = tfet_defaults();
    CHECK(2.0 * t.v_on() == twice.v_on()); // exact: binary halving commutes with the formula
}

TEST_CASE("iv sweep grid and serialization") {
    const DeviceParams t = tfet_defaults();
    const IvCurve c = iv_sweep(t, 101);
    REQUIRE(c.points.size() == 101);
    CHECK(c.points.front().first == 0.0);
    CHECK(c.points.back().first == t.vdd);
    CHECK(c.points.front().second == t.i_off);
    CHECK(c.points.back().second == t.i_on);
    // evenly spaced grid
    CHECK(c.points[50].first == doctest::Approx(t.vdd * 0.5).epsilon(1e-15));
    CHECK_THROWS_AS(iv_sweep(t, 1), ConfigError);

    const std::string csv = iv_curve_csv(c);
    CHECK(csv.rfind("v_gs,i_ds\n", 0) == 0);
    CHECK(csv.find("0.00000000e+00,1.00000000e-12\n") != std::string::npos);
}

TEST_CASE("validation rejects unphysical parameters") {
    DeviceParams p = tfet_defaults();
    p.ss = 0.0;
    CHECK_THROWS_AS(validate(p), ConfigError);
    p = tfet_defaults();
    p.i_off = 2e-5; // off above on
    CHECK_THROWS_AS(validate(p), ConfigError);
    p = tfet_defaults();
    p.vdd = 0.0;
    CHECK_THROWS_AS(validate(p), ConfigError);
    p = tfet_defaults();
    p.temperature = -5.0;
    CHECK_THROWS_AS(validate(p), ConfigError);
}
