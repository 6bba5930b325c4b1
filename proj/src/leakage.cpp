#include "wb/leakage.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "wb/aes.hpp"
#include "wb/csvio.hpp"
#include "wb/errors.hpp"
#include "wb/rng.hpp"

namespace wb {

int hamming_weight(std::uint8_t v) { return std::popcount(unsigned(v)); }

ReseedMode reseed_from_string(const std::string& name) {
    if (name == "row") return ReseedMode::RowIndex;
    if (name == "plaintext") return ReseedMode::PlaintextValue;
    throw ConfigError("unknown reseed mode '" + name + "' (expected row or plaintext)");
}

std::string reseed_name(ReseedMode m) {
    return m == ReseedMode::RowIndex ? "row" : "plaintext";
}

LeakageConfig preset(Tech tech, Style style) {
    // Anchored to the bundled S-Box module averages (pW): the same
    // constants the calibrated library reproduces.
    const double sl_power = tech == Tech::TFET ? 0.046371 : 0.2385;
    const double cml_power = tech == Tech::TFET ? 47.976 : 789.78;
    LeakageConfig cfg;
    cfg.tech = tech;
    cfg.style = style;
    if (style == Style::SL) {
        cfg.baseline = sl_power;
        cfg.alpha = sl_power / 8.0; // full Hamming-weight swing spans the average
        cfg.bias_power = 0.0;
        cfg.ripple = 0.0;
    } else {
        cfg.baseline = 0.0;
        cfg.alpha = 0.0;
        cfg.bias_power = cml_power;
        cfg.ripple = 0.05;
    }
    return cfg;
}

void validate(const LeakageConfig& cfg) {
    if (cfg.n_samples < 1) throw ConfigError("leakage config: n_samples must be >= 1");
    if (cfg.leak_sample < 0 || cfg.leak_sample >= cfg.n_samples)
        throw ConfigError("leakage config: leak_sample outside [0, n_samples)");
    if (!(cfg.time_step > 0.0)) throw ConfigError("leakage config: time_step must be > 0");
    if (cfg.style == Style::SL && !(cfg.alpha > 0.0))
        throw ConfigError("leakage config: alpha must be > 0 for static logic");
    if (!(cfg.ripple >= 0.0 && cfg.ripple < 1.0))
        throw ConfigError("leakage config: ripple must be in [0, 1)");
    if (!(cfg.noise_sigma >= 0.0)) throw ConfigError("leakage config: noise_sigma must be >= 0");
    for (const auto& lp : cfg.extra_leaks)
        if (lp.sample < 0 || lp.sample >= cfg.n_samples)
            throw ConfigError("leakage config: extra leak sample outside [0, n_samples)");
}

std::vector<double> synth_trace(std::uint8_t p, std::uint8_t k, const LeakageConfig& cfg,
                                std::uint64_t row_key) {
    const int hw = hamming_weight(aes::sbox(std::uint8_t(p ^ k)));
    const double centered = double(hw) / 8.0 - 0.5;
    std::vector<double> trace(std::size_t(cfg.n_samples));
    const double flat = cfg.style == Style::SL ? cfg.baseline : cfg.bias_power;
    for (int s = 0; s < cfg.n_samples; ++s) {
        double v = flat;
        if (cfg.noise_sigma > 0.0)
            v += cfg.noise_sigma * gaussian(cfg.seed, row_key, std::uint64_t(s));
        trace[std::size_t(s)] = v;
    }
    auto add_leak = [&](int sample, double gain) {
        if (cfg.style == Style::SL)
            trace[std::size_t(sample)] += gain * double(hw);
        else
            trace[std::size_t(sample)] += gain * cfg.bias_power * centered;
    };
    add_leak(cfg.leak_sample, cfg.style == Style::SL ? cfg.alpha : cfg.ripple);
    for (const auto& lp : cfg.extra_leaks) add_leak(lp.sample, lp.gain);
    return trace;
}

TraceSet synth_traceset(const std::vector<std::uint8_t>& plaintexts, std::uint8_t k,
                        const LeakageConfig& cfg) {
    if (plaintexts.empty()) throw ConfigError("synth_traceset: empty plaintext list");
    validate(cfg);
    TraceSet ts;
    ts.n_traces = int(plaintexts.size());
    ts.n_samples = cfg.n_samples;
    ts.samples.resize(std::size_t(ts.n_traces) * std::size_t(ts.n_samples));
    ts.plaintexts = plaintexts;
    ts.cfg = cfg;
    ts.true_key = k;
    for (int row = 0; row < ts.n_traces; ++row) {
        const std::uint8_t p = plaintexts[std::size_t(row)];
        const std::uint64_t row_key =
            cfg.reseed == ReseedMode::RowIndex ? std::uint64_t(row) : std::uint64_t(p);
        const auto trace = synth_trace(p, k, cfg, row_key);
        std::copy(trace.begin(), trace.end(),
                  ts.samples.begin() + std::size_t(row) * std::size_t(ts.n_samples));
    }
    return ts;
}

AttackInputs table3_inputs() {
    return AttackInputs{
        {{{{0x03, 0xF4, 0x5A, 0x49, 0x50, 0xDF, 0x5B, 0xD1, 0x22, 0x1A, 0x0E, 0x23, 0xC9, 0x85,
            0x10, 0x39}},
          {{0x0D, 0x28, 0x33, 0x84, 0x12, 0xB9, 0x0A, 0x2F, 0xB1, 0xBE, 0xD1, 0x73, 0x41, 0xD5,
            0xDD, 0xF9}},
          {{0x03, 0x11, 0xE4, 0x16, 0xD5, 0x02, 0xC3, 0xFA, 0xC2, 0x44, 0x5E, 0x17, 0x47, 0x4A,
            0x1C, 0xEB}},
          {{0x05, 0x35, 0x39, 0x20, 0x3F, 0xA8, 0x4E, 0x96, 0xC9, 0x17, 0x43, 0x98, 0x31, 0x82,
            0xEB, 0xB4}}}},
        {{0xDE, 0x36, 0x97, 0xF3, 0x70, 0x88, 0x17, 0x1E, 0xE2, 0x0E, 0x0D, 0x6C, 0x12, 0x2A,
          0xF5, 0xC8}}};
}

std::string traceset_csv(const TraceSet& ts, const std::string& stamp) {
    std::string out = stamp + "\n";
    out += "trace_id,plaintext_hex";
    for (int s = 0; s < ts.n_samples; ++s) out += ",s" + std::to_string(s);
    out += '\n';
    for (int row = 0; row < ts.n_traces; ++row) {
        out += std::to_string(row);
        out += ',';
        out += to_hex(&ts.plaintexts[std::size_t(row)], 1);
        for (int s = 0; s < ts.n_samples; ++s) {
            out += ',';
            out += fmt_double(ts.at(row, s));
        }
        out += '\n';
    }
    return out;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::string& in, std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(in[off + i])) << (8 * i);
    return v;
}

} // namespace

void write_tset(const std::string& path, const TraceSet& ts) {
    std::string out = "TSET1";
    put_u32(out, std::uint32_t(ts.n_traces));
    put_u32(out, std::uint32_t(ts.n_samples));
    for (double v : ts.samples) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int i = 0; i < 8; ++i) out.push_back(char((bits >> (8 * i)) & 0xFF));
    }
    out.append(ts.plaintexts.begin(), ts.plaintexts.end());
    atomic_write(path, out);
}

TraceSet read_tset(const std::string& path) {
    const std::string in = read_file(path);
    if (in.size() < 13 || in.compare(0, 5, "TSET1") != 0)
        throw DataError(path + ": not a TSET1 container");
    TraceSet ts;
    ts.n_traces = int(get_u32(in, 5));
    ts.n_samples = int(get_u32(in, 9));
    const std::size_t n = std::size_t(ts.n_traces) * std::size_t(ts.n_samples);
    if (in.size() != 13 + 8 * n + std::size_t(ts.n_traces))
        throw DataError(path + ": truncated TSET1 container");
    ts.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= std::uint64_t(std::uint8_t(in[13 + 8 * i + std::size_t(b)])) << (8 * b);
        double v;
        std::memcpy(&v, &bits, sizeof v);
        ts.samples[i] = v;
    }
    ts.plaintexts.assign(in.begin() + std::ptrdiff_t(13 + 8 * n), in.end());
    return ts;
}

} // namespace wb
