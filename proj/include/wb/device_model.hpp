#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wb {

enum class Tech { TFET, MOSFET };

// "cmos" is accepted as a synonym for the conventional-FET technology,
// matching the naming used by the bundled characterization data.
Tech tech_from_string(const std::string& name);
std::string tech_name(Tech t);      // "tfet" / "mosfet"
std::string tech_data_name(Tech t); // "tfet" / "cmos" (data-file column names)

// Piecewise analytic transistor model: exponential sub-threshold region
// i_off * 10^(v_gs / ss) capped by a flat on-current plateau. v_on is the
// hand-off voltage, fixed by continuity: v_on = (ss/1000)*log10(i_on/i_off).
struct DeviceParams {
    Tech tech = Tech::TFET;
    double vdd = 0.3;          // V
    double ss = 30.0;          // mV/decade
    double i_off = 1e-12;      // A, leakage floor at v_gs = 0
    double i_on = 1e-5;        // A, saturation plateau
    double temperature = 300.0; // K
    std::string doping_meta;   // informational only

    double v_on() const;       // V
};

DeviceParams tfet_defaults();
DeviceParams mosfet_defaults();

// Thermionic sub-threshold limit (k*T/q)*ln10 in mV/decade.
double thermionic_limit_mv_per_dec(double temperature_k);

// Throws ConfigError when an invariant fails (current ordering, v_on
// range, or a conventional FET below the thermionic slope limit).
void validate(const DeviceParams& p);

struct IvCurve {
    std::vector<std::pair<double, double>> points; // (v_gs, i_ds)
};

// Throws ConfigError when v_gs is outside [0, vdd].
double drain_current(const DeviceParams& p, double v_gs);

// Measured slope between two points of the exponential region; equals
// p.ss exactly for this model. Throws ConfigError on an invalid window
// or equal currents (undefined slope).
double subthreshold_slope(const DeviceParams& p, double v1, double v2);

// n_points evenly spaced gate voltages over [0, vdd]. Throws ConfigError
// when n_points < 2.
IvCurve iv_sweep(const DeviceParams& p, int n_points);

// CSV with header "v_gs,i_ds", scientific notation, 9 significant digits.
std::string iv_curve_csv(const IvCurve& curve);

} // namespace wb
