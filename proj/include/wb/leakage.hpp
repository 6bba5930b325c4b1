#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wb/power_model.hpp"

namespace wb {

int hamming_weight(std::uint8_t v);

// Noise streams are reseeded per trace row either by row index (default)
// or by the row's plaintext byte value; value-keyed reseeding makes the
// synthesized rows a function of the plaintext alone, so permuting the
// plaintext list permutes the rows.
enum class ReseedMode { RowIndex, PlaintextValue };

ReseedMode reseed_from_string(const std::string& name);
std::string reseed_name(ReseedMode m);

// Extra informative samples (multi-sample extension hook).
struct LeakPoint {
    int sample = 0;
    double gain = 0.0; // per Hamming-weight unit (SL) / per centered-HW unit (CML)
};

// Statistical stand-in for a transient circuit simulation: every trace
// is flat except at the leak sample(s), where static logic adds a term
// proportional to HW(sbox(p XOR k)) and current-mode logic adds a small
// zero-mean ripple around its constant bias draw.
struct LeakageConfig {
    Tech tech = Tech::TFET;
    Style style = Style::SL;
    int n_samples = 2000;       // with time_step: a 10 ns analysis window
    double time_step = 5e-12;   // seconds
    int leak_sample = 1000;
    double alpha = 1.0;         // SL power units per Hamming-weight unit
    double baseline = 0.0;      // SL constant offset
    double bias_power = 1.0;    // CML constant draw
    double ripple = 0.05;       // CML data-dependent fraction, in [0, 1)
    double noise_sigma = 0.0;   // Gaussian noise std dev per sample
    std::uint64_t seed = 0;
    ReseedMode reseed = ReseedMode::RowIndex;
    std::vector<LeakPoint> extra_leaks; // defaults to none
};

// Anchor the magnitudes to the bundled S-Box averages for the chosen
// technology and style: SL sets baseline to the S-Box static-logic power
// and alpha to baseline/8 (full HW swing spans the average); CML sets
// bias_power to the S-Box current-mode draw with a 5% ripple.
LeakageConfig preset(Tech tech, Style style);

// Throws ConfigError on invariant violations (sample indices, ripple
// range, non-positive alpha for SL, negative noise).
void validate(const LeakageConfig& cfg);

struct TraceSet {
    int n_traces = 0;
    int n_samples = 0;
    std::vector<double> samples;        // row-major n_traces x n_samples
    std::vector<std::uint8_t> plaintexts; // attacked byte, one per row
    LeakageConfig cfg;
    std::optional<std::uint8_t> true_key; // retained for evaluation only

    double at(int row, int sample) const { return samples[std::size_t(row) * n_samples + sample]; }
};

// One synthesized trace; row_key selects the per-row noise stream.
std::vector<double> synth_trace(std::uint8_t p, std::uint8_t k, const LeakageConfig& cfg,
                                std::uint64_t row_key);

// One row per plaintext. Throws ConfigError on an empty plaintext list.
TraceSet synth_traceset(const std::vector<std::uint8_t>& plaintexts, std::uint8_t k,
                        const LeakageConfig& cfg);

// The bundled four 128-bit plaintext blocks and sixteen key bytes used
// by the reference attack experiment.
struct AttackInputs {
    std::array<std::array<std::uint8_t, 16>, 4> plaintexts;
    std::array<std::uint8_t, 16> key;
};

AttackInputs table3_inputs();

// CSV: header "trace_id,plaintext_hex,s0..s{n-1}".
std::string traceset_csv(const TraceSet& ts, const std::string& stamp);

// Compact binary container: magic "TSET1", little-endian u32 n_traces,
// u32 n_samples, row-major 64-bit floats, then the plaintext byte table.
void write_tset(const std::string& path, const TraceSet& ts);
TraceSet read_tset(const std::string& path);

} // namespace wb
