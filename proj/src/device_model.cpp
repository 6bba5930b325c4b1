#include "wb/device_model.hpp"

#include <cctype>
#include <cmath>

#include "wb/csvio.hpp"
#include "wb/errors.hpp"

namespace wb {

Tech tech_from_string(const std::string& name) {
    std::string low;
    low.reserve(name.size());
    for (char c : name) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (low == "tfet") return Tech::TFET;
    if (low == "mosfet" || low == "cmos") return Tech::MOSFET;
    throw ConfigError("unknown technology '" + name + "' (expected tfet, mosfet, or cmos)");
}

std::string tech_name(Tech t) { return t == Tech::TFET ? "tfet" : "mosfet"; }
std::string tech_data_name(Tech t) { return t == Tech::TFET ? "tfet" : "cmos"; }

double DeviceParams::v_on() const { return (ss / 1000.0) * std::log10(i_on / i_off); }

DeviceParams tfet_defaults() {
    DeviceParams p;
    p.tech = Tech::TFET;
    p.vdd = 0.3;
    p.ss = 30.0;
    p.i_off = 1e-12;
    p.i_on = 1e-5;
    p.doping_meta = "n-type, source doping 4e19 cm^-3, placeholder geometry";
    return p;
}

DeviceParams mosfet_defaults() {
    DeviceParams p;
    p.tech = Tech::MOSFET;
    p.vdd = 0.6;
    p.ss = 60.0;
    p.i_off = 1e-10;
    p.i_on = 1e-4;
    p.doping_meta = "n-type, conventional inversion-mode, placeholder geometry";
    return p;
}

double thermionic_limit_mv_per_dec(double temperature_k) {
    const double k_b = 1.380649e-23;     // J/K
    const double q = 1.602176634e-19;    // C
    return (k_b * temperature_k / q) * std::log(10.0) * 1000.0;
}

void validate(const DeviceParams& p) {
    if (!(p.i_off > 0.0) || !(p.i_off < p.i_on))
        throw ConfigError("device params: require 0 < i_off < i_on");
    if (!(p.ss > 0.0)) throw ConfigError("device params: require ss > 0");
    if (!(p.temperature > 0.0)) throw ConfigError("device params: require temperature > 0");
    double von = p.v_on();
    if (!(von > 0.0) || !(von <= p.vdd))
        throw ConfigError("device params: v_on = (ss/1000)*log10(i_on/i_off) must lie in (0, vdd]");
    // A conventional FET cannot beat the thermionic sub-threshold limit.
    if (p.tech == Tech::MOSFET && p.ss < thermionic_limit_mv_per_dec(p.temperature))
        throw ConfigError("device params: mosfet slope below the thermionic limit");
}

double drain_current(const DeviceParams& p, double v_gs) {
    if (!(v_gs >= 0.0) || !(v_gs <= p.vdd))
        throw ConfigError("drain_current: v_gs outside [0, vdd]");
    if (v_gs >= p.v_on()) return p.i_on;
    double i = p.i_off * std::pow(10.0, v_gs * 1000.0 / p.ss);
    return i < p.i_on ? i : p.i_on;
}

double subthreshold_slope(const DeviceParams& p, double v1, double v2) {
    if (!(0.0 <= v1) || !(v1 < v2) || !(v2 < p.v_on()))
        throw ConfigError("subthreshold_slope: require 0 <= v1 < v2 < v_on");
    double d = std::log10(drain_current(p, v2)) - std::log10(drain_current(p, v1));
    if (d == 0.0) throw ConfigError("subthreshold_slope: equal currents, slope undefined");
    return (v2 - v1) * 1000.0 / d;
}

IvCurve iv_sweep(const DeviceParams& p, int n_points) {
    if (n_points < 2) throw ConfigError("iv_sweep: need at least 2 points");
    IvCurve curve;
    curve.points.reserve(std::size_t(n_points));
    for (int i = 0; i < n_points; ++i) {
        double v = p.vdd * double(i) / double(n_points - 1);
        curve.points.emplace_back(v, drain_current(p, v));
    }
    return curve;
}

std::string iv_curve_csv(const IvCurve& curve) {
    std::string out = "v_gs,i_ds\n";
    for (const auto& [v, i] : curve.points) {
        out += fmt_sci9(v);
        out += ',';
        out += fmt_sci9(i);
        out += '\n';
    }
    return out;
}

} // namespace wb
