#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wb/leakage.hpp"

namespace wb {

// Pearson correlation coefficient, two-pass (means, then centered
// sums). A constant input has no defined correlation; it returns
// exactly 0, and results are clamped to [-1, 1] against rounding.
// Throws ConfigError on length mismatch or fewer than two points.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Hypothetical leakage per key guess: entry [g][i] = HW(sbox(p_i XOR g)),
// row-major 256 x n_traces.
std::vector<std::uint8_t> hypothesis_matrix(const std::vector<std::uint8_t>& plaintexts);

struct CorrelationMatrix {
    int n_samples = 0;
    std::vector<double> values; // row-major 256 x n_samples
    double at(int guess, int sample) const { return values[std::size_t(guess) * n_samples + sample]; }
};

// Correlate every key-guess hypothesis row against every trace-sample
// column. Entries equal pearson() of the same vectors bit-for-bit.
// Throws ConfigError with fewer than two traces.
CorrelationMatrix cpa_attack(const TraceSet& ts);

struct KeyRanking {
    std::array<double, 256> peak{};   // max |correlation| over samples
    std::array<int, 256> ranking{};   // guesses sorted by peak, descending
    double margin = 0.0;              // best peak - second best
    double dispersion = 0.0;          // std dev of peaks across guesses
    int recovered_key = 0;            // top-ranked guess
    std::optional<std::uint8_t> true_key;
    bool success = false;             // recovered == true_key (when known)
};

// Peak ranking with ties broken toward the smaller guess value.
KeyRanking rank_keys(const CorrelationMatrix& cm, std::optional<std::uint8_t> true_key);

struct ExperimentResult {
    Tech tech = Tech::TFET;
    Style style = Style::SL;
    int key_byte_index = 0;
    KeyRanking ranking;
};

// Report CSV rows:
// tech,style,key_byte_index,recovered,true,peak,margin,dispersion,success
std::string attack_report_csv(const std::vector<ExperimentResult>& results,
                              const std::string& stamp);

// Per-guess correlation traces for external plotting: "guess,s0..s{n-1}".
std::string correlation_dump_csv(const CorrelationMatrix& cm, const std::string& stamp);

} // namespace wb
